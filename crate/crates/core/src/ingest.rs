//! GeoJSON layers and dataset manifests.
//!
//! A manifest is a small TOML file:
//!
//! ```toml
//! id = "transit"
//! title = "Transit commuters by state"
//! label = "transit commuting"
//! units = "%"
//!
//! [[layer]]
//! name = "state"
//! path = "states.geojson"
//! value_field = "transit_pct"
//! name_field = "NAME"
//! min_zoom = 0
//! ```
//!
//! Layer paths are resolved relative to the manifest file.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use geojson::{Feature, FeatureCollection, GeoJson, Geometry, JsonObject, JsonValue, Value};
use serde::Deserialize;
use thiserror::Error;

use crate::geometry::{GeoFeature, GeoPoint, GeoRect, GeometryError, Polygon, Ring};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("malformed GeoJSON at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("malformed GeoJSON: {0}")]
    Document(String),
    #[error("layer has no usable features ({0})")]
    EmptyLayer(LoadReport),
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid manifest {path}: {message}")]
    Manifest { path: PathBuf, message: String },
    #[error("layer '{layer}' in {path}: {source}")]
    Layer {
        path: PathBuf,
        layer: String,
        #[source]
        source: Box<IngestError>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkipReason {
    MissingValue,
    NonNumericValue(String),
    NoGeometry,
    UnsupportedGeometry(String),
    InvalidGeometry(String),
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkipReason::MissingValue => f.write_str("missing value"),
            SkipReason::NonNumericValue(v) => write!(f, "non-numeric value {v}"),
            SkipReason::NoGeometry => f.write_str("no geometry"),
            SkipReason::UnsupportedGeometry(kind) => write!(f, "unsupported geometry kind {kind}"),
            SkipReason::InvalidGeometry(msg) => write!(f, "invalid geometry: {msg}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedFeature {
    /// Position in the source collection.
    pub index: usize,
    pub id: String,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub loaded: usize,
    pub skipped: Vec<SkippedFeature>,
}

impl LoadReport {
    pub fn skipped_count(&self) -> usize {
        self.skipped.len()
    }
}

impl fmt::Display for LoadReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} loaded, {} skipped", self.loaded, self.skipped.len())?;
        for s in &self.skipped {
            write!(f, "; feature {} ({}): {}", s.index, s.id, s.reason)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct LoadedLayer {
    pub features: Vec<GeoFeature>,
    pub report: LoadReport,
}

fn feature_id(feature: &Feature, index: usize) -> String {
    match &feature.id {
        Some(geojson::feature::Id::String(s)) => s.clone(),
        Some(geojson::feature::Id::Number(n)) => n.to_string(),
        None => index.to_string(),
    }
}

fn parse_value(props: Option<&JsonObject>, field: &str) -> Result<f64, SkipReason> {
    let raw = props.and_then(|p| p.get(field));
    let v = match raw {
        None | Some(JsonValue::Null) => return Err(SkipReason::MissingValue),
        Some(JsonValue::Number(n)) => n.as_f64(),
        Some(JsonValue::String(s)) => s.trim().parse::<f64>().ok(),
        Some(_) => None,
    };
    match v {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(SkipReason::NonNumericValue(
            raw.map(|r| r.to_string()).unwrap_or_default(),
        )),
    }
}

fn parse_name(props: Option<&JsonObject>, field: &str, id: &str) -> String {
    match props.and_then(|p| p.get(field)) {
        Some(JsonValue::String(s)) => s.clone(),
        Some(JsonValue::Null) | None => id.to_string(),
        Some(other) => other.to_string(),
    }
}

fn ring(coords: &[Vec<f64>]) -> Result<Ring, GeometryError> {
    let pts = coords
        .iter()
        .map(|c| match c.as_slice() {
            [lon, lat, ..] => Ok(GeoPoint::new(*lon, *lat)),
            _ => Err(GeometryError::InvalidGeometry(
                "position needs two coordinates".into(),
            )),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ring::new(pts)
}

fn polygon(rings: &[Vec<Vec<f64>>]) -> Result<Polygon, GeometryError> {
    let (outer, holes) = rings
        .split_first()
        .ok_or_else(|| GeometryError::InvalidGeometry("polygon without rings".into()))?;
    Ok(Polygon::new(
        ring(outer)?,
        holes.iter().map(|h| ring(h)).collect::<Result<_, _>>()?,
    ))
}

fn parse_geometry(geometry: Option<&Geometry>) -> Result<Vec<Polygon>, SkipReason> {
    let g = geometry.ok_or(SkipReason::NoGeometry)?;
    let invalid = |e: GeometryError| SkipReason::InvalidGeometry(e.to_string());
    match &g.value {
        Value::Polygon(rings) => Ok(vec![polygon(rings).map_err(invalid)?]),
        Value::MultiPolygon(polys) => {
            let parts = polys
                .iter()
                .map(|p| polygon(p))
                .collect::<Result<Vec<_>, _>>()
                .map_err(invalid)?;
            if parts.is_empty() {
                return Err(SkipReason::InvalidGeometry("empty multipolygon".into()));
            }
            Ok(parts)
        }
        other => Err(SkipReason::UnsupportedGeometry(
            other.type_name().to_string(),
        )),
    }
}

/// Parses a FeatureCollection of Polygon/MultiPolygon features. Features
/// without a usable value or geometry are skipped and listed in the report;
/// a missing name falls back to the feature id.
pub fn load_layer(
    bytes: &[u8],
    value_field: &str,
    name_field: &str,
) -> Result<LoadedLayer, IngestError> {
    let json: JsonValue = serde_json::from_slice(bytes).map_err(|e| IngestError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let collection = match GeoJson::from_json_value(json) {
        Ok(GeoJson::FeatureCollection(fc)) => fc,
        Ok(GeoJson::Feature(_)) => {
            return Err(IngestError::Document(
                "expected a FeatureCollection, found a Feature".into(),
            ))
        }
        Ok(GeoJson::Geometry(_)) => {
            return Err(IngestError::Document(
                "expected a FeatureCollection, found a Geometry".into(),
            ))
        }
        Err(e) => return Err(IngestError::Document(e.to_string())),
    };

    let mut features = Vec::with_capacity(collection.features.len());
    let mut report = LoadReport::default();
    for (index, feature) in collection.features.iter().enumerate() {
        let id = feature_id(feature, index);
        let props = feature.properties.as_ref();
        let parsed = parse_geometry(feature.geometry.as_ref()).and_then(|geometry| {
            let value = parse_value(props, value_field)?;
            let name = parse_name(props, name_field, &id);
            GeoFeature::new(id.clone(), name, geometry, value)
                .map_err(|e| SkipReason::InvalidGeometry(e.to_string()))
        });
        match parsed {
            Ok(f) => features.push(f),
            Err(reason) => report.skipped.push(SkippedFeature { index, id, reason }),
        }
    }
    report.loaded = features.len();
    if features.is_empty() {
        return Err(IngestError::EmptyLayer(report));
    }
    Ok(LoadedLayer { features, report })
}

fn ring_coords(ring: &Ring) -> Vec<Vec<f64>> {
    let pts = ring.points();
    pts.iter()
        .chain(pts.first())
        .map(|p| vec![p.lon, p.lat])
        .collect()
}

fn polygon_coords(p: &Polygon) -> Vec<Vec<Vec<f64>>> {
    std::iter::once(&p.exterior)
        .chain(p.holes.iter())
        .map(ring_coords)
        .collect()
}

/// Writes features back out as a FeatureCollection using the given
/// property names.
pub fn features_to_geojson(features: &[GeoFeature], value_field: &str, name_field: &str) -> String {
    let features = features
        .iter()
        .map(|f| {
            let value = match f.geometry() {
                [single] => Value::Polygon(polygon_coords(single)),
                parts => Value::MultiPolygon(parts.iter().map(polygon_coords).collect()),
            };
            let mut props = JsonObject::new();
            props.insert(name_field.to_string(), JsonValue::from(f.name()));
            props.insert(value_field.to_string(), JsonValue::from(f.value()));
            Feature {
                bbox: None,
                geometry: Some(Geometry::new(value)),
                id: Some(geojson::feature::Id::String(f.id().to_string())),
                properties: Some(props),
                foreign_members: None,
            }
        })
        .collect();
    GeoJson::FeatureCollection(FeatureCollection {
        bbox: None,
        features,
        foreign_members: None,
    })
    .to_string()
}

#[derive(Debug, Clone)]
pub struct Layer {
    pub name: String,
    pub min_zoom: u32,
    pub features: Vec<GeoFeature>,
}

/// Zoom-banded layers sharing one title, label and units.
#[derive(Debug, Clone)]
pub struct Dataset {
    id: String,
    title: String,
    label: String,
    units: String,
    layers: Vec<Layer>,
    bbox: GeoRect,
}

impl Dataset {
    /// Layers must be non-empty, have strictly increasing `min_zoom`
    /// starting at 0, and contain at least one feature between them.
    pub fn new(
        id: impl Into<String>,
        title: impl Into<String>,
        label: impl Into<String>,
        units: impl Into<String>,
        layers: Vec<Layer>,
    ) -> Result<Self, String> {
        match layers.first() {
            None => return Err("dataset needs at least one layer".into()),
            Some(l) if l.min_zoom != 0 => {
                return Err(format!("first layer '{}' must have min_zoom 0", l.name))
            }
            _ => {}
        }
        if let Some(w) = layers.windows(2).find(|w| w[1].min_zoom <= w[0].min_zoom) {
            return Err(format!(
                "layer '{}' min_zoom {} must exceed '{}' min_zoom {}",
                w[1].name, w[1].min_zoom, w[0].name, w[0].min_zoom
            ));
        }
        let bbox = layers
            .iter()
            .flat_map(|l| l.features.iter().map(GeoFeature::bbox))
            .reduce(|a, b| a.union(&b))
            .ok_or("dataset has no features")?;
        Ok(Self {
            id: id.into(),
            title: title.into(),
            label: label.into(),
            units: units.into(),
            layers,
            bbox,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    /// Short name of the mapped variable, e.g. "population density".
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn units(&self) -> &str {
        &self.units
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn bbox(&self) -> GeoRect {
        self.bbox
    }

    /// The layer whose zoom band contains `zoom`.
    pub fn layer_for_zoom(&self, zoom: u32) -> &Layer {
        self.layers
            .iter()
            .rev()
            .find(|l| l.min_zoom <= zoom)
            .unwrap_or(&self.layers[0])
    }

    /// Replaces every layer's `min_zoom` with the given thresholds.
    pub fn with_zoom_bands(mut self, bands: &[u32]) -> Result<Self, String> {
        if bands.len() != self.layers.len() {
            return Err(format!(
                "{} zoom bands given for {} layers",
                bands.len(),
                self.layers.len()
            ));
        }
        for (layer, &z) in self.layers.iter_mut().zip(bands) {
            layer.min_zoom = z;
        }
        let Dataset {
            id,
            title,
            label,
            units,
            layers,
            ..
        } = self;
        Dataset::new(id, title, label, units, layers)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestFile {
    id: Option<String>,
    title: String,
    label: String,
    #[serde(default)]
    units: String,
    #[serde(rename = "layer")]
    layers: Vec<ManifestLayer>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestLayer {
    name: String,
    path: PathBuf,
    value_field: String,
    name_field: String,
    min_zoom: u32,
}

/// Loads every layer named by a manifest. Returns the dataset plus the load
/// report of each layer, in manifest order.
pub fn load_manifest(path: &Path) -> Result<(Dataset, Vec<(String, LoadReport)>), IngestError> {
    let manifest_err = |message: String| IngestError::Manifest {
        path: path.to_path_buf(),
        message,
    };
    let text = fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let manifest: ManifestFile = toml::from_str(&text).map_err(|e| manifest_err(e.to_string()))?;
    let base = path.parent().unwrap_or(Path::new("."));

    let mut layers = Vec::with_capacity(manifest.layers.len());
    let mut reports = Vec::with_capacity(manifest.layers.len());
    for entry in manifest.layers {
        let layer_path = base.join(&entry.path);
        let bytes = fs::read(&layer_path).map_err(|source| IngestError::Io {
            path: layer_path.clone(),
            source,
        })?;
        let loaded = load_layer(&bytes, &entry.value_field, &entry.name_field).map_err(|e| {
            IngestError::Layer {
                path: layer_path.clone(),
                layer: entry.name.clone(),
                source: Box::new(e),
            }
        })?;
        reports.push((entry.name.clone(), loaded.report));
        layers.push(Layer {
            name: entry.name,
            min_zoom: entry.min_zoom,
            features: loaded.features,
        });
    }
    let id = manifest.id.unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".into())
    });
    let dataset = Dataset::new(id, manifest.title, manifest.label, manifest.units, layers)
        .map_err(manifest_err)?;
    Ok((dataset, reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = r#"{"type":"FeatureCollection","features":[
      {"type":"Feature","id":"a","properties":{"NAME":"Alpha","v":3},
       "geometry":{"type":"Polygon","coordinates":[[[0,0],[2,0],[2,2],[0,2],[0,0]]]}},
      {"type":"Feature","properties":{"NAME":"Beta","v":"4.5"},
       "geometry":{"type":"MultiPolygon","coordinates":[[[[3,0],[4,0],[4,1],[3,1],[3,0]]]]}}
    ]}"#;

    #[test]
    fn loads_polygons_and_multipolygons() {
        let layer = load_layer(TWO.as_bytes(), "v", "NAME").unwrap();
        assert_eq!(layer.features.len(), 2);
        assert_eq!(layer.report.skipped_count(), 0);
        let a = &layer.features[0];
        assert_eq!((a.id(), a.name(), a.value()), ("a", "Alpha", 3.0));
        assert_eq!(a.centroid(), GeoPoint::new(1.0, 1.0));
        let b = &layer.features[1];
        assert_eq!((b.id(), b.value()), ("1", 4.5));
        assert_eq!(b.centroid(), GeoPoint::new(3.5, 0.5));
    }

    #[test]
    fn skips_bad_values_and_geometries() {
        let doc = r#"{"type":"FeatureCollection","features":[
          {"type":"Feature","properties":{"NAME":"Ok","v":1},
           "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]]]}},
          {"type":"Feature","properties":{"NAME":"NA","v":"N/A"},
           "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]]]}},
          {"type":"Feature","properties":{"NAME":"Pt","v":2},
           "geometry":{"type":"Point","coordinates":[0,0]}},
          {"type":"Feature","properties":{"NAME":"Missing"},
           "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]]]}},
          {"type":"Feature","properties":{"NAME":"Flat","v":2},
           "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,1],[0,0]]]}},
          {"type":"Feature","properties":{"NAME":"Null","v":2},"geometry":null}
        ]}"#;
        let layer = load_layer(doc.as_bytes(), "v", "NAME").unwrap();
        assert_eq!(layer.features.len(), 1);
        let reasons: Vec<_> = layer
            .report
            .skipped
            .iter()
            .map(|s| s.reason.clone())
            .collect();
        assert_eq!(reasons[0], SkipReason::NonNumericValue("\"N/A\"".into()));
        assert_eq!(reasons[1], SkipReason::UnsupportedGeometry("Point".into()));
        assert_eq!(reasons[2], SkipReason::MissingValue);
        assert!(matches!(reasons[3], SkipReason::InvalidGeometry(_)));
        assert_eq!(reasons[4], SkipReason::NoGeometry);
        assert_eq!(layer.report.loaded, 1);
    }

    #[test]
    fn single_na_feature_reported() {
        let doc = r#"{"type":"FeatureCollection","features":[
          {"type":"Feature","properties":{"NAME":"Ok","v":1},
           "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]]]}},
          {"type":"Feature","properties":{"NAME":"NA","v":"N/A"},
           "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]]]}}
        ]}"#;
        let layer = load_layer(doc.as_bytes(), "v", "NAME").unwrap();
        assert_eq!(layer.report.skipped_count(), 1);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = load_layer(
            b"{\n  \"type\": \"FeatureCollection\",\n  oops\n}",
            "v",
            "NAME",
        )
        .unwrap_err();
        match err {
            IngestError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_document_kinds() {
        let err = load_layer(br#"{"type":"Point","coordinates":[0,0]}"#, "v", "n").unwrap_err();
        assert!(matches!(err, IngestError::Document(_)));
        let err = load_layer(br#"{"type":"FeatureCollection"}"#, "v", "n").unwrap_err();
        assert!(matches!(err, IngestError::Document(_)));
    }

    #[test]
    fn empty_layer_error() {
        let err =
            load_layer(br#"{"type":"FeatureCollection","features":[]}"#, "v", "n").unwrap_err();
        assert!(matches!(err, IngestError::EmptyLayer(_)));
    }

    #[test]
    fn round_trip_preserves_centroids_and_values() {
        let layer = load_layer(TWO.as_bytes(), "v", "NAME").unwrap();
        let text = features_to_geojson(&layer.features, "v", "NAME");
        let again = load_layer(text.as_bytes(), "v", "NAME").unwrap();
        assert_eq!(layer.features.len(), again.features.len());
        for (a, b) in layer.features.iter().zip(&again.features) {
            assert_eq!(a.centroid(), b.centroid());
            assert_eq!(a.value(), b.value());
            assert_eq!(a.name(), b.name());
        }
    }

    fn layer(name: &str, min_zoom: u32) -> Layer {
        Layer {
            name: name.into(),
            min_zoom,
            features: vec![GeoFeature::rect(
                "x",
                "X",
                GeoRect::new(0.0, 0.0, 1.0, 1.0).unwrap(),
                1.0,
            )
            .unwrap()],
        }
    }

    #[test]
    fn dataset_layer_rules() {
        assert!(Dataset::new("d", "t", "l", "u", vec![]).is_err());
        assert!(Dataset::new("d", "t", "l", "u", vec![layer("a", 1)]).is_err());
        assert!(Dataset::new("d", "t", "l", "u", vec![layer("a", 0), layer("b", 0)]).is_err());
        let ds = Dataset::new(
            "d",
            "t",
            "l",
            "u",
            vec![layer("state", 0), layer("county", 5)],
        )
        .unwrap();
        assert_eq!(ds.layer_for_zoom(4).name, "state");
        assert_eq!(ds.layer_for_zoom(5).name, "county");
        assert_eq!(ds.layer_for_zoom(8).name, "county");
        let rebanded = ds.with_zoom_bands(&[0, 3]).unwrap();
        assert_eq!(rebanded.layer_for_zoom(3).name, "county");
    }
}
