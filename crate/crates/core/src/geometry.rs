//! Planar geometry in raw longitude/latitude degrees.
//!
//! Everything here treats coordinates as an equirectangular plane: areas,
//! centroids and containment are computed directly on `(lon, lat)` pairs.
//! Rectangles never cross the antimeridian.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building geometric values.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("invalid rectangle: west={west}, south={south}, east={east}, north={north}")]
    InvalidRect {
        west: f64,
        south: f64,
        east: f64,
        north: f64,
    },
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("feature value must be finite, got {0}")]
    NonFiniteValue(f64),
}

/// A WGS84 position in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoPoint {
    pub lon: f64,
    pub lat: f64,
}

impl GeoPoint {
    pub const fn new(lon: f64, lat: f64) -> Self {
        Self { lon, lat }
    }
}

impl fmt::Display for GeoPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lon, self.lat)
    }
}

/// An axis-aligned rectangle with `west < east` and `south < north`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRect")]
pub struct GeoRect {
    west: f64,
    south: f64,
    east: f64,
    north: f64,
}

#[derive(Deserialize)]
struct RawRect {
    west: f64,
    south: f64,
    east: f64,
    north: f64,
}

impl TryFrom<RawRect> for GeoRect {
    type Error = GeometryError;

    fn try_from(raw: RawRect) -> Result<Self, Self::Error> {
        GeoRect::new(raw.west, raw.south, raw.east, raw.north)
    }
}

impl GeoRect {
    pub fn new(west: f64, south: f64, east: f64, north: f64) -> Result<Self, GeometryError> {
        let finite = [west, south, east, north].iter().all(|v| v.is_finite());
        if !finite || west >= east || south >= north {
            return Err(GeometryError::InvalidRect {
                west,
                south,
                east,
                north,
            });
        }
        Ok(Self {
            west,
            south,
            east,
            north,
        })
    }

    /// The whole lon/lat plane, used as the pan clamp.
    pub fn world() -> Self {
        Self {
            west: -180.0,
            south: -90.0,
            east: 180.0,
            north: 90.0,
        }
    }

    pub fn west(&self) -> f64 {
        self.west
    }

    pub fn south(&self) -> f64 {
        self.south
    }

    pub fn east(&self) -> f64 {
        self.east
    }

    pub fn north(&self) -> f64 {
        self.north
    }

    pub fn width(&self) -> f64 {
        self.east - self.west
    }

    pub fn height(&self) -> f64 {
        self.north - self.south
    }

    /// Planar area in square degrees.
    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn center(&self) -> GeoPoint {
        GeoPoint::new(
            (self.west + self.east) / 2.0,
            (self.south + self.north) / 2.0,
        )
    }

    /// Corners in reading order: top-left, top-right, bottom-left, bottom-right.
    pub fn corners(&self) -> [GeoPoint; 4] {
        [
            GeoPoint::new(self.west, self.north),
            GeoPoint::new(self.east, self.north),
            GeoPoint::new(self.west, self.south),
            GeoPoint::new(self.east, self.south),
        ]
    }

    /// Closed containment: points on the edge are inside.
    pub fn contains(&self, p: GeoPoint) -> bool {
        p.lon >= self.west && p.lon <= self.east && p.lat >= self.south && p.lat <= self.north
    }

    /// True when the two closed rectangles share at least one point.
    pub fn intersects(&self, other: &GeoRect) -> bool {
        self.west <= other.east
            && other.west <= self.east
            && self.south <= other.north
            && other.south <= self.north
    }

    pub fn union(&self, other: &GeoRect) -> GeoRect {
        GeoRect {
            west: self.west.min(other.west),
            south: self.south.min(other.south),
            east: self.east.max(other.east),
            north: self.north.max(other.north),
        }
    }

    /// Grows each side by `fraction` of the corresponding span.
    pub fn padded(&self, fraction: f64) -> GeoRect {
        let dx = self.width() * fraction;
        let dy = self.height() * fraction;
        GeoRect {
            west: self.west - dx,
            south: self.south - dy,
            east: self.east + dx,
            north: self.north + dy,
        }
    }

    pub fn translated(&self, dlon: f64, dlat: f64) -> GeoRect {
        GeoRect {
            west: self.west + dlon,
            south: self.south + dlat,
            east: self.east + dlon,
            north: self.north + dlat,
        }
    }

    /// Rectangle with the same center and spans multiplied by `factor`.
    pub fn scaled_about_center(&self, factor: f64) -> GeoRect {
        let c = self.center();
        let half_w = self.width() * factor / 2.0;
        let half_h = self.height() * factor / 2.0;
        GeoRect {
            west: c.lon - half_w,
            south: c.lat - half_h,
            east: c.lon + half_w,
            north: c.lat + half_h,
        }
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.west, self.south, self.east, self.north]
    }

    fn clamp_point(&self, p: GeoPoint) -> GeoPoint {
        GeoPoint::new(
            p.lon.clamp(self.west, self.east),
            p.lat.clamp(self.south, self.north),
        )
    }
}

impl fmt::Display for GeoRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.west, self.south, self.east, self.north
        )
    }
}

/// A closed ring stored without the repeated closing vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Ring(Vec<GeoPoint>);

impl Ring {
    /// Builds a ring, dropping a trailing vertex equal to the first one.
    pub fn new(mut points: Vec<GeoPoint>) -> Result<Self, GeometryError> {
        if points.len() > 1 && points.first() == points.last() {
            points.pop();
        }
        if let Some(p) = points
            .iter()
            .find(|p| !p.lon.is_finite() || !p.lat.is_finite())
        {
            return Err(GeometryError::InvalidGeometry(format!(
                "non-finite vertex {p}"
            )));
        }
        let mut distinct: Vec<GeoPoint> = Vec::with_capacity(points.len());
        for p in &points {
            if !distinct.contains(p) {
                distinct.push(*p);
                if distinct.len() >= 3 {
                    break;
                }
            }
        }
        if distinct.len() < 3 {
            return Err(GeometryError::InvalidGeometry(format!(
                "ring needs at least 3 distinct vertices, got {}",
                distinct.len()
            )));
        }
        Ok(Self(points))
    }

    pub fn points(&self) -> &[GeoPoint] {
        &self.0
    }

    /// Iterates `(a, b)` over every edge including the closing one.
    pub fn edges(&self) -> impl Iterator<Item = (GeoPoint, GeoPoint)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (self.0[i], self.0[(i + 1) % n]))
    }

    /// Signed shoelace area and area centroid, computed relative to the
    /// first vertex to limit cancellation.
    fn area_and_centroid(&self) -> (f64, GeoPoint) {
        let origin = self.0[0];
        let mut twice_area = 0.0;
        let mut cx = 0.0;
        let mut cy = 0.0;
        for (a, b) in self.edges() {
            let (ax, ay) = (a.lon - origin.lon, a.lat - origin.lat);
            let (bx, by) = (b.lon - origin.lon, b.lat - origin.lat);
            let cross = ax * by - bx * ay;
            twice_area += cross;
            cx += (ax + bx) * cross;
            cy += (ay + by) * cross;
        }
        let area = twice_area / 2.0;
        if area == 0.0 {
            return (0.0, origin);
        }
        (
            area,
            GeoPoint::new(
                origin.lon + cx / (6.0 * area),
                origin.lat + cy / (6.0 * area),
            ),
        )
    }

    fn bbox(&self) -> GeoRectBounds {
        let mut b = GeoRectBounds::empty();
        for p in &self.0 {
            b.include(*p);
        }
        b
    }
}

/// One polygon: an outer ring and optional holes.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    pub exterior: Ring,
    pub holes: Vec<Ring>,
}

impl Polygon {
    pub fn new(exterior: Ring, holes: Vec<Ring>) -> Self {
        Self { exterior, holes }
    }

    /// Convenience constructor for a hole-free polygon.
    pub fn from_points(points: Vec<GeoPoint>) -> Result<Self, GeometryError> {
        Ok(Self::new(Ring::new(points)?, Vec::new()))
    }

    fn rings(&self) -> impl Iterator<Item = &Ring> {
        std::iter::once(&self.exterior).chain(self.holes.iter())
    }
}

/// Running min/max accumulator that may still be empty.
#[derive(Debug, Clone, Copy)]
struct GeoRectBounds {
    west: f64,
    south: f64,
    east: f64,
    north: f64,
}

impl GeoRectBounds {
    fn empty() -> Self {
        Self {
            west: f64::INFINITY,
            south: f64::INFINITY,
            east: f64::NEG_INFINITY,
            north: f64::NEG_INFINITY,
        }
    }

    fn include(&mut self, p: GeoPoint) {
        self.west = self.west.min(p.lon);
        self.south = self.south.min(p.lat);
        self.east = self.east.max(p.lon);
        self.north = self.north.max(p.lat);
    }

    fn merge(&mut self, other: GeoRectBounds) {
        self.west = self.west.min(other.west);
        self.south = self.south.min(other.south);
        self.east = self.east.max(other.east);
        self.north = self.north.max(other.north);
    }

    /// Degenerate extents (a vertical or horizontal sliver) are widened by a
    /// hair so the result is still a valid rectangle.
    fn to_rect(self) -> GeoRect {
        let (mut west, mut south, mut east, mut north) =
            (self.west, self.south, self.east, self.north);
        if west >= east {
            let eps = f64::EPSILON * west.abs().max(1.0);
            west -= eps;
            east += eps;
        }
        if south >= north {
            let eps = f64::EPSILON * south.abs().max(1.0);
            south -= eps;
            north += eps;
        }
        GeoRect {
            west,
            south,
            east,
            north,
        }
    }
}

/// Area centroid of a polygon or multipolygon.
///
/// Each part's outer ring contributes its shoelace centroid weighted by its
/// absolute area; holes are ignored. If every part has zero area the mean of
/// all outer-ring vertices is returned instead.
pub fn polygon_centroid(parts: &[Polygon]) -> Result<GeoPoint, GeometryError> {
    if parts.is_empty() {
        return Err(GeometryError::InvalidGeometry("empty geometry".into()));
    }
    let mut total = 0.0;
    let mut sx = 0.0;
    let mut sy = 0.0;
    for part in parts {
        let (area, c) = part.exterior.area_and_centroid();
        let w = area.abs();
        total += w;
        sx += w * c.lon;
        sy += w * c.lat;
    }
    if total > 0.0 {
        return Ok(GeoPoint::new(sx / total, sy / total));
    }

    let (mut n, mut mx, mut my) = (0usize, 0.0, 0.0);
    for p in parts.iter().flat_map(|part| part.exterior.points()) {
        n += 1;
        mx += p.lon;
        my += p.lat;
    }
    Ok(GeoPoint::new(mx / n as f64, my / n as f64))
}

fn on_segment(p: GeoPoint, a: GeoPoint, b: GeoPoint) -> bool {
    let cross = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
    let scale = (b.lon - a.lon).abs().max((b.lat - a.lat).abs()).max(1.0);
    if cross.abs() > 1e-12 * scale * scale {
        return false;
    }
    p.lon >= a.lon.min(b.lon)
        && p.lon <= a.lon.max(b.lon)
        && p.lat >= a.lat.min(b.lat)
        && p.lat <= a.lat.max(b.lat)
}

/// Even-odd ray casting over every ring of every part. Points on any ring
/// edge, hole edges included, count as inside.
pub fn point_in_polygon(p: GeoPoint, parts: &[Polygon]) -> bool {
    parts.iter().any(|part| {
        let mut inside = false;
        for ring in part.rings() {
            for (a, b) in ring.edges() {
                if on_segment(p, a, b) {
                    return true;
                }
                if (a.lat > p.lat) != (b.lat > p.lat) {
                    let x = a.lon + (p.lat - a.lat) / (b.lat - a.lat) * (b.lon - a.lon);
                    if p.lon < x {
                        inside = !inside;
                    }
                }
            }
        }
        inside
    })
}

/// A named region with a numeric attribute.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoFeature {
    id: String,
    name: String,
    geometry: Vec<Polygon>,
    value: f64,
    centroid: GeoPoint,
    bbox: GeoRect,
}

impl GeoFeature {
    pub fn new(
        id: impl Into<String>,
        name: impl Into<String>,
        geometry: Vec<Polygon>,
        value: f64,
    ) -> Result<Self, GeometryError> {
        if !value.is_finite() {
            return Err(GeometryError::NonFiniteValue(value));
        }
        let centroid = polygon_centroid(&geometry)?;
        let mut bounds = GeoRectBounds::empty();
        for part in &geometry {
            bounds.merge(part.exterior.bbox());
        }
        let bbox = bounds.to_rect();
        Ok(Self {
            id: id.into(),
            name: name.into(),
            geometry,
            value,
            // Self-intersecting rings can push the shoelace centroid outside
            // the extent.
            centroid: bbox.clamp_point(centroid),
            bbox,
        })
    }

    /// Axis-aligned square feature, handy for fixtures and tests.
    pub fn rect(
        id: impl Into<String>,
        name: impl Into<String>,
        rect: GeoRect,
        value: f64,
    ) -> Result<Self, GeometryError> {
        let ring = vec![
            GeoPoint::new(rect.west, rect.south),
            GeoPoint::new(rect.east, rect.south),
            GeoPoint::new(rect.east, rect.north),
            GeoPoint::new(rect.west, rect.north),
        ];
        Self::new(id, name, vec![Polygon::from_points(ring)?], value)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn geometry(&self) -> &[Polygon] {
        &self.geometry
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn centroid(&self) -> GeoPoint {
        self.centroid
    }

    pub fn bbox(&self) -> GeoRect {
        self.bbox
    }

    pub fn contains(&self, p: GeoPoint) -> bool {
        self.bbox.contains(p) && point_in_polygon(p, &self.geometry)
    }
}

/// Picks the rectangle with strictly smaller planar area; ties go to the
/// viewport.
pub fn select_analysis_rect(dataset_bbox: GeoRect, viewport: GeoRect) -> GeoRect {
    if dataset_bbox.area() < viewport.area() {
        dataset_bbox
    } else {
        viewport
    }
}

/// Row-major index (row 0 = north) of the 3x3 cell containing `p`, or `None`
/// when `p` lies outside `rect`. Cells include their west and north edges;
/// the east and south edges of the rectangle clamp into the last cell.
pub fn cell_index_of_point(p: GeoPoint, rect: GeoRect) -> Option<usize> {
    if !rect.contains(p) {
        return None;
    }
    let col = (3.0 * (p.lon - rect.west) / rect.width())
        .floor()
        .clamp(0.0, 2.0) as usize;
    let row = (3.0 * (rect.north - p.lat) / rect.height())
        .floor()
        .clamp(0.0, 2.0) as usize;
    Some(3 * row + col)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[(f64, f64)]) -> Polygon {
        Polygon::from_points(pts.iter().map(|&(x, y)| GeoPoint::new(x, y)).collect()).unwrap()
    }

    fn rect(w: f64, s: f64, e: f64, n: f64) -> GeoRect {
        GeoRect::new(w, s, e, n).unwrap()
    }

    fn assert_close(p: GeoPoint, lon: f64, lat: f64) {
        assert!(
            (p.lon - lon).abs() < 1e-12 && (p.lat - lat).abs() < 1e-12,
            "{p} != ({lon}, {lat})"
        );
    }

    #[test]
    fn centroid_of_unit_square() {
        let c =
            polygon_centroid(&[poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])]).unwrap();
        assert_close(c, 0.5, 0.5);
    }

    #[test]
    fn centroid_of_right_triangle() {
        let c = polygon_centroid(&[poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])]).unwrap();
        assert_close(c, 1.0 / 3.0, 1.0 / 3.0);
    }

    #[test]
    fn centroid_of_two_square_strip_is_area_weighted() {
        // [0,1]² ∪ [1,2]×[0,1] as one ring; halves have centroids (0.5,0.5) and (1.5,0.5).
        let c = polygon_centroid(&[poly(&[
            (0.0, 0.0),
            (1.0, 0.0),
            (2.0, 0.0),
            (2.0, 1.0),
            (1.0, 1.0),
            (0.0, 1.0),
        ])])
        .unwrap();
        assert_close(c, 1.0, 0.5);
    }

    #[test]
    fn centroid_of_true_l_shape() {
        // [0,2]×[0,1] plus [0,1]×[1,2]: areas 2 and 1, centroids (1,0.5), (0.5,1.5).
        let c = polygon_centroid(&[poly(&[
            (0.0, 0.0),
            (2.0, 0.0),
            (2.0, 1.0),
            (1.0, 1.0),
            (1.0, 2.0),
            (0.0, 2.0),
        ])])
        .unwrap();
        assert_close(c, (2.0 * 1.0 + 0.5) / 3.0, (2.0 * 0.5 + 1.5) / 3.0);
    }

    #[test]
    fn centroid_is_orientation_independent() {
        let ccw = polygon_centroid(&[poly(&[(0.0, 0.0), (4.0, 0.0), (0.0, 2.0)])]).unwrap();
        let cw = polygon_centroid(&[poly(&[(0.0, 0.0), (0.0, 2.0), (4.0, 0.0)])]).unwrap();
        assert_close(cw, ccw.lon, ccw.lat);
    }

    #[test]
    fn multipolygon_centroid_weights_by_area() {
        let small = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let big = poly(&[(10.0, 0.0), (12.0, 0.0), (12.0, 2.0), (10.0, 2.0)]);
        let c = polygon_centroid(&[small, big]).unwrap();
        assert_close(c, (0.5 + 4.0 * 11.0) / 5.0, (0.5 + 4.0 * 1.0) / 5.0);
    }

    #[test]
    fn zero_area_falls_back_to_vertex_mean() {
        let flat = poly(&[(0.0, 0.0), (1.0, 1.0), (3.0, 3.0)]);
        let c = polygon_centroid(&[flat]).unwrap();
        assert_close(c, 4.0 / 3.0, 4.0 / 3.0);
    }

    #[test]
    fn empty_geometry_is_rejected() {
        assert!(matches!(
            polygon_centroid(&[]),
            Err(GeometryError::InvalidGeometry(_))
        ));
    }

    #[test]
    fn ring_needs_three_distinct_vertices() {
        let pts = vec![
            GeoPoint::new(0.0, 0.0),
            GeoPoint::new(1.0, 1.0),
            GeoPoint::new(0.0, 0.0),
            GeoPoint::new(1.0, 1.0),
        ];
        assert!(Ring::new(pts).is_err());
    }

    #[test]
    fn ring_drops_closing_vertex() {
        let ring = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 0.0)]).exterior;
        assert_eq!(ring.points().len(), 3);
    }

    #[test]
    fn rect_validation() {
        assert!(GeoRect::new(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(GeoRect::new(0.0, 2.0, 1.0, 1.0).is_err());
        assert!(GeoRect::new(0.0, 0.0, f64::NAN, 1.0).is_err());
        let parsed: Result<GeoRect, _> =
            serde_json::from_str(r#"{"west":2,"south":0,"east":1,"north":1}"#);
        assert!(parsed.is_err());
    }

    #[test]
    fn analysis_rect_prefers_smaller_area() {
        let dataset = rect(-125.0, 24.0, -66.0, 50.0);
        let view = rect(-100.0, 30.0, -90.0, 40.0);
        assert_eq!(select_analysis_rect(dataset, view), view);
        let world = rect(-180.0, -60.0, 180.0, 60.0);
        assert_eq!(select_analysis_rect(dataset, world), dataset);
        let same = dataset;
        // Tie: identical rects return the viewport argument.
        let picked = select_analysis_rect(dataset, same);
        assert_eq!(picked, same);
    }

    #[test]
    fn analysis_rect_tie_returns_viewport_instance() {
        // Equal areas, different placement.
        let dataset = rect(0.0, 0.0, 2.0, 1.0);
        let view = rect(5.0, 5.0, 6.0, 7.0);
        assert_eq!(select_analysis_rect(dataset, view), view);
    }

    #[test]
    fn cell_indices() {
        let r = rect(0.0, 0.0, 3.0, 3.0);
        assert_eq!(cell_index_of_point(GeoPoint::new(0.5, 2.5), r), Some(0));
        assert_eq!(cell_index_of_point(GeoPoint::new(1.5, 1.5), r), Some(4));
        assert_eq!(cell_index_of_point(GeoPoint::new(3.5, 1.5), r), None);
        assert_eq!(cell_index_of_point(GeoPoint::new(2.5, 0.5), r), Some(8));
    }

    #[test]
    fn cell_boundaries_follow_floor_and_clamp() {
        let r = rect(0.0, 0.0, 3.0, 3.0);
        // Interior vertical boundary lon=1 belongs to the eastern cell.
        assert_eq!(cell_index_of_point(GeoPoint::new(1.0, 2.5), r), Some(1));
        // Interior horizontal boundary lat=2 belongs to the southern cell.
        assert_eq!(cell_index_of_point(GeoPoint::new(0.5, 2.0), r), Some(3));
        // Rectangle corners.
        assert_eq!(cell_index_of_point(GeoPoint::new(0.0, 3.0), r), Some(0));
        assert_eq!(cell_index_of_point(GeoPoint::new(3.0, 3.0), r), Some(2));
        assert_eq!(cell_index_of_point(GeoPoint::new(0.0, 0.0), r), Some(6));
        assert_eq!(cell_index_of_point(GeoPoint::new(3.0, 0.0), r), Some(8));
    }

    #[test]
    fn point_in_polygon_basics() {
        let sq = [poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])];
        assert!(point_in_polygon(GeoPoint::new(0.5, 0.5), &sq));
        assert!(!point_in_polygon(GeoPoint::new(2.0, 2.0), &sq));
        assert!(point_in_polygon(GeoPoint::new(1.0, 0.5), &sq));
        assert!(point_in_polygon(GeoPoint::new(0.0, 0.0), &sq));
    }

    #[test]
    fn point_in_polygon_respects_holes() {
        let outer = Ring::new(vec![
            GeoPoint::new(0.0, 0.0),
            GeoPoint::new(4.0, 0.0),
            GeoPoint::new(4.0, 4.0),
            GeoPoint::new(0.0, 4.0),
        ])
        .unwrap();
        let hole = Ring::new(vec![
            GeoPoint::new(1.0, 1.0),
            GeoPoint::new(3.0, 1.0),
            GeoPoint::new(3.0, 3.0),
            GeoPoint::new(1.0, 3.0),
        ])
        .unwrap();
        let donut = [Polygon::new(outer, vec![hole])];
        assert!(!point_in_polygon(GeoPoint::new(2.0, 2.0), &donut));
        assert!(point_in_polygon(GeoPoint::new(0.5, 2.0), &donut));
        assert!(point_in_polygon(GeoPoint::new(1.0, 2.0), &donut));
        // The hole does not move the centroid.
        assert_close(polygon_centroid(&donut).unwrap(), 2.0, 2.0);
    }

    #[test]
    fn feature_rejects_non_finite_value() {
        let r = rect(0.0, 0.0, 1.0, 1.0);
        assert!(matches!(
            GeoFeature::rect("a", "A", r, f64::NAN),
            Err(GeometryError::NonFiniteValue(_))
        ));
        let f = GeoFeature::rect("a", "A", r, 3.0).unwrap();
        assert!(f.bbox().contains(f.centroid()));
    }

    #[test]
    fn rect_ops() {
        let r = rect(0.0, 0.0, 4.0, 2.0);
        assert_eq!(r.padded(0.25), rect(-1.0, -0.5, 5.0, 2.5));
        assert_eq!(r.scaled_about_center(0.5), rect(1.0, 0.5, 3.0, 1.5));
        assert!(r.intersects(&rect(4.0, 2.0, 5.0, 3.0)));
        assert!(!r.intersects(&rect(4.1, 0.0, 5.0, 1.0)));
        assert_eq!(r.corners()[1], GeoPoint::new(4.0, 2.0));
    }
}
