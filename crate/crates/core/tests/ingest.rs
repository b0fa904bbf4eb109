use std::fs;

use mapvoice_core::geometry::{GeoFeature, GeoPoint, Polygon};
use mapvoice_core::ingest::{features_to_geojson, load_layer, load_manifest, IngestError};
use proptest::prelude::*;

fn feature_strategy() -> impl Strategy<Value = GeoFeature> {
    (
        -170.0f64..160.0,
        -80.0f64..70.0,
        prop::collection::vec((0.1f64..5.0, 0.1f64..5.0), 3..8),
        -1e6f64..1e6,
        "[A-Za-z ]{1,12}",
    )
        .prop_filter_map("degenerate ring", |(x, y, offsets, value, name)| {
            let ring: Vec<GeoPoint> = offsets
                .iter()
                .enumerate()
                .map(|(i, &(r, _))| {
                    let t = i as f64 / offsets.len() as f64 * std::f64::consts::TAU;
                    GeoPoint::new(x + r * t.cos(), y + r * t.sin())
                })
                .collect();
            let poly = Polygon::from_points(ring).ok()?;
            GeoFeature::new("id", name, vec![poly], value).ok()
        })
}

proptest! {
    #[test]
    fn serialize_and_reload_preserves_centroids_and_values(
        features in prop::collection::vec(feature_strategy(), 1..10)
    ) {
        let text = features_to_geojson(&features, "value", "name");
        let reloaded = load_layer(text.as_bytes(), "value", "name").unwrap();
        prop_assert_eq!(reloaded.features.len(), features.len());
        for (a, b) in features.iter().zip(&reloaded.features) {
            prop_assert_eq!(a.centroid(), b.centroid());
            prop_assert_eq!(a.value(), b.value());
        }
    }
}

const LAYER: &str = r#"{"type":"FeatureCollection","features":[
  {"type":"Feature","properties":{"NAME":"West","pop":10},
   "geometry":{"type":"Polygon","coordinates":[[[0,0],[5,0],[5,5],[0,5],[0,0]]]}},
  {"type":"Feature","properties":{"NAME":"East","pop":20},
   "geometry":{"type":"Polygon","coordinates":[[[5,0],[10,0],[10,5],[5,5],[5,0]]]}}
]}"#;

#[test]
fn manifest_loads_layers_relative_to_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.geojson"), LAYER).unwrap();
    fs::write(
        dir.path().join("demo.toml"),
        r#"
title = "Demo"
label = "population"
units = "people"

[[layer]]
name = "state"
path = "a.geojson"
value_field = "pop"
name_field = "NAME"
min_zoom = 0
"#,
    )
    .unwrap();
    let (ds, reports) = load_manifest(&dir.path().join("demo.toml")).unwrap();
    assert_eq!(ds.id(), "demo");
    assert_eq!(ds.title(), "Demo");
    assert_eq!(ds.layers().len(), 1);
    assert_eq!(reports[0].1.loaded, 2);
    for f in &ds.layers()[0].features {
        assert!(ds.bbox().contains(f.centroid()));
    }
}

#[test]
fn manifest_errors_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    fs::write(&path, "title = \"x\"\n").unwrap();
    assert!(matches!(
        load_manifest(&path),
        Err(IngestError::Manifest { .. })
    ));
    assert!(matches!(
        load_manifest(&dir.path().join("missing.toml")),
        Err(IngestError::Io { .. })
    ));

    fs::write(
        dir.path().join("empty.geojson"),
        r#"{"type":"FeatureCollection","features":[]}"#,
    )
    .unwrap();
    fs::write(
        &path,
        "title = \"x\"\nlabel = \"y\"\n[[layer]]\nname = \"s\"\npath = \"empty.geojson\"\nvalue_field = \"v\"\nname_field = \"n\"\nmin_zoom = 0\n",
    )
    .unwrap();
    let err = load_manifest(&path).unwrap_err();
    assert!(matches!(err, IngestError::Layer { .. }), "{err}");
    assert!(err.to_string().contains("no usable features"));
}
