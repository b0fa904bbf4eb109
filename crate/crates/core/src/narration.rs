//! Sentence templates for everything a listener hears.
//!
//! All output is deterministic. Numbers use one decimal place, rounding
//! halves away from zero.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::grouping::{PatternResult, SpatialGroup};

pub const OUT_OF_BOUNDS_TEXT: &str = "Currently out of bounds. Please move back on the map.";

const NO_REGION_FALLBACK: &str = "no particular regions with";
const OUTSIDE_DATA: &str = "outside data";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum AnnouncementKind {
    Summary,
    Move,
    Zoom,
    Corners,
    OutOfBounds,
    Title,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Announcement {
    pub text: String,
    pub kind: AnnouncementKind,
}

impl Announcement {
    fn new(kind: AnnouncementKind, text: String) -> Self {
        debug_assert!(!text.is_empty());
        Self { text, kind }
    }
}

impl fmt::Display for Announcement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
    Up,
    Down,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Left,
        Direction::Right,
        Direction::Up,
        Direction::Down,
    ];

    pub fn opposite(self) -> Direction {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Left => "left",
            Direction::Right => "right",
            Direction::Up => "up",
            Direction::Down => "down",
        }
    }

    pub fn parse(s: &str) -> Option<Direction> {
        Direction::ALL.into_iter().find(|d| d.as_str() == s)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

/// Corner region names: top-left, top-right, bottom-left, bottom-right.
pub type CornerRegions = [Option<String>; 4];

/// Everything needed to describe one view.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ViewDescription {
    pub title: String,
    pub layer_name: String,
    pub zoom_level: u32,
    pub corner_regions: CornerRegions,
    pub pattern: PatternResult,
    pub extremum_high: Option<NamedValue>,
    pub extremum_low: Option<NamedValue>,
    pub average: Option<f64>,
    pub visible_count: usize,
    pub dataset_label: String,
    pub units: String,
}

/// One decimal place, halves rounded away from zero, never "-0.0".
pub fn format_value(v: f64) -> String {
    let tenths = (v.abs() * 10.0 + 0.5).floor();
    if tenths == 0.0 {
        return "0.0".to_string();
    }
    let sign = if v < 0.0 { "-" } else { "" };
    format!("{sign}{:.1}", tenths / 10.0)
}

fn with_units(v: f64, units: &str) -> String {
    if units.is_empty() {
        format_value(v)
    } else {
        format!("{} {}", format_value(v), units)
    }
}

fn sentence(s: &str) -> String {
    let trimmed = s.trim_end();
    if trimmed.ends_with('.') {
        trimmed.to_string()
    } else {
        format!("{trimmed}.")
    }
}

fn pattern_sentence(group: Option<&SpatialGroup>, word: &str, label: &str) -> String {
    match group {
        Some(g) => format!(
            "{label} is {word} in the {} of the current map view.",
            g.indicator
        ),
        None => format!("{NO_REGION_FALLBACK} {word} {label}."),
    }
}

pub fn render_summary(v: &ViewDescription) -> Announcement {
    let mut parts = vec![
        sentence(&v.title),
        format!(
            "Showing {}-level data at zoom level {}.",
            v.layer_name, v.zoom_level
        ),
    ];
    let pattern = if v.visible_count > 0 {
        &v.pattern
    } else {
        &PatternResult::default()
    };
    parts.push(pattern_sentence(
        pattern.high.as_ref(),
        "high",
        &v.dataset_label,
    ));
    parts.push(pattern_sentence(
        pattern.low.as_ref(),
        "low",
        &v.dataset_label,
    ));
    if v.visible_count > 0 {
        if let (Some(hi), Some(lo)) = (&v.extremum_high, &v.extremum_low) {
            parts.push(format!(
                "Highest: {}, {}. Lowest: {}, {}.",
                hi.name,
                with_units(hi.value, &v.units),
                lo.name,
                with_units(lo.value, &v.units)
            ));
        }
        if let Some(avg) = v.average {
            parts.push(format!(
                "Average across {} visible {} areas: {}.",
                v.visible_count,
                v.layer_name,
                with_units(avg, &v.units)
            ));
        }
    }
    Announcement::new(AnnouncementKind::Summary, parts.join(" "))
}

pub fn render_move(direction: Direction, center_region: Option<&str>) -> Announcement {
    let text = match center_region {
        Some(name) => format!("Moved {direction}, now centered on {name}."),
        None => format!("Moved {direction}, not centered on any region."),
    };
    Announcement::new(AnnouncementKind::Move, text)
}

pub fn render_zoom(inward: bool, layer_name: &str) -> Announcement {
    let way = if inward { "in" } else { "out" };
    Announcement::new(
        AnnouncementKind::Zoom,
        format!("Zoomed {way} to {layer_name}-level view."),
    )
}

pub fn render_corners(corners: &CornerRegions) -> Announcement {
    let name = |i: usize| corners[i].as_deref().unwrap_or(OUTSIDE_DATA);
    Announcement::new(
        AnnouncementKind::Corners,
        format!(
            "Top-left: {}. Top-right: {}. Bottom-left: {}. Bottom-right: {}.",
            name(0),
            name(1),
            name(2),
            name(3)
        ),
    )
}

pub fn render_out_of_bounds() -> Announcement {
    Announcement::new(
        AnnouncementKind::OutOfBounds,
        OUT_OF_BOUNDS_TEXT.to_string(),
    )
}

pub fn render_title(title: &str) -> Announcement {
    Announcement::new(
        AnnouncementKind::Title,
        format!("{} Press m to explore the map.", sentence(title)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouping::{LocationIndicator, Polarity};

    fn view() -> ViewDescription {
        ViewDescription {
            title: "Transit commuters by state".into(),
            layer_name: "state".into(),
            zoom_level: 0,
            corner_regions: [None, None, None, None],
            pattern: PatternResult::default(),
            extremum_high: Some(NamedValue {
                name: "New York".into(),
                value: 28.15,
            }),
            extremum_low: Some(NamedValue {
                name: "Alabama".into(),
                value: 0.25,
            }),
            average: Some(5.04),
            visible_count: 48,
            dataset_label: "transit commuting".into(),
            units: "%".into(),
        }
    }

    fn group(indicator: LocationIndicator, polarity: Polarity) -> SpatialGroup {
        SpatialGroup {
            polarity,
            size: 4,
            cells: vec![1, 2, 4, 5],
            indicator,
        }
    }

    #[test]
    fn golden_summary() {
        let mut v = view();
        v.pattern.high = Some(group(LocationIndicator::TopRightCorner, Polarity::High));
        let text = render_summary(&v).text;
        assert_eq!(
            text,
            "Transit commuters by state. Showing state-level data at zoom level 0. \
             transit commuting is high in the top-right corner of the current map view. \
             no particular regions with low transit commuting. \
             Highest: New York, 28.2 %. Lowest: Alabama, 0.3 %. \
             Average across 48 visible state areas: 5.0 %."
        );
    }

    #[test]
    fn fallback_when_no_high_group() {
        let text = render_summary(&view()).text;
        assert!(text.contains("no particular regions with high transit commuting"));
        assert!(text.contains("no particular regions with low transit commuting"));
    }

    #[test]
    fn empty_view_omits_values() {
        let mut v = view();
        v.visible_count = 0;
        v.extremum_high = None;
        v.extremum_low = None;
        v.average = None;
        let text = render_summary(&v).text;
        assert!(!text.contains("Highest"));
        assert!(!text.contains("Average"));
        assert!(text.ends_with("no particular regions with low transit commuting."));
    }

    #[test]
    fn move_texts() {
        assert_eq!(
            render_move(Direction::Right, Some("Missouri")).text,
            "Moved right, now centered on Missouri."
        );
        assert_eq!(
            render_move(Direction::Up, None).text,
            "Moved up, not centered on any region."
        );
        let m = render_move(Direction::Left, Some("Kansas"));
        assert_eq!(m.text, "Moved left, now centered on Kansas.");
        assert_eq!(m.kind, AnnouncementKind::Move);
    }

    #[test]
    fn corner_texts() {
        let c = [
            Some("Washington".to_string()),
            Some("Montana".to_string()),
            Some("Oregon".to_string()),
            Some("Idaho".to_string()),
        ];
        assert_eq!(
            render_corners(&c).text,
            "Top-left: Washington. Top-right: Montana. Bottom-left: Oregon. Bottom-right: Idaho."
        );
        assert_eq!(
            render_corners(&[None, None, None, None]).text,
            "Top-left: outside data. Top-right: outside data. Bottom-left: outside data. Bottom-right: outside data."
        );
        assert_eq!(
            render_corners(&[None, Some("Maine".into()), None, None]).text,
            "Top-left: outside data. Top-right: Maine. Bottom-left: outside data. Bottom-right: outside data."
        );
    }

    #[test]
    fn out_of_bounds_is_fixed() {
        let a = render_out_of_bounds();
        assert_eq!(
            a.text,
            "Currently out of bounds. Please move back on the map."
        );
        assert_eq!(a, render_out_of_bounds());
        assert_eq!(a.kind, AnnouncementKind::OutOfBounds);
    }

    #[test]
    fn value_formatting() {
        assert_eq!(format_value(2.25), "2.3");
        assert_eq!(format_value(-2.25), "-2.3");
        assert_eq!(format_value(0.04), "0.0");
        assert_eq!(format_value(-0.04), "0.0");
        assert_eq!(format_value(1234567.0), "1234567.0");
        assert_eq!(format_value(0.15), "0.2");
        assert_eq!(format_value(9.96), "10.0");
    }

    #[test]
    fn empty_units_have_no_trailing_space() {
        let mut v = view();
        v.units.clear();
        assert!(render_summary(&v)
            .text
            .contains("Highest: New York, 28.2. Lowest"));
    }

    #[test]
    fn title_and_zoom() {
        assert_eq!(
            render_title("Population density").text,
            "Population density. Press m to explore the map."
        );
        assert_eq!(
            render_zoom(true, "county").text,
            "Zoomed in to county-level view."
        );
        assert_eq!(
            render_zoom(false, "state").text,
            "Zoomed out to state-level view."
        );
    }
}
