//! Viewport navigation and the per-session action engine shared by the CLI
//! replayer and the HTTP service.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{select_analysis_rect, GeoRect};
use crate::grid::summarize_grid;
use crate::grouping::{detect_groups, LowWindowMode, PatternResult};
use crate::ingest::{Dataset, Layer};
use crate::narration::{
    render_corners, render_move, render_out_of_bounds, render_summary, render_zoom, Announcement,
    CornerRegions, Direction, NamedValue, ViewDescription,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionConfig {
    /// Share of the viewport span moved per pan step.
    pub pan_fraction: f64,
    pub zoom_min: u32,
    pub zoom_max: u32,
    pub low_window_mode: LowWindowMode,
    /// Margin added around the dataset extent for the opening view.
    pub initial_padding: f64,
}

impl Default for SessionConfig {
    fn default() -> Self {
        Self {
            pan_fraction: 0.25,
            zoom_min: 0,
            zoom_max: 8,
            low_window_mode: LowWindowMode::Literal,
            initial_padding: 0.05,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub rect: GeoRect,
    pub zoom: u32,
}

impl Viewport {
    pub fn new(rect: GeoRect, zoom: u32) -> Self {
        Self { rect, zoom }
    }

    /// Dataset extent plus the configured margin, at the minimum zoom.
    pub fn initial(dataset: &Dataset, config: &SessionConfig) -> Self {
        Self::new(
            dataset.bbox().padded(config.initial_padding),
            config.zoom_min,
        )
    }
}

/// Step length for `delta` clamped so the moving edge stops at `limit`.
/// Already past the limit means no movement.
fn clamped_step(edge: f64, delta: f64, limit: f64) -> f64 {
    if delta > 0.0 {
        delta.min((limit - edge).max(0.0))
    } else {
        delta.max((limit - edge).min(0.0))
    }
}

pub fn pan(v: &Viewport, direction: Direction, pan_fraction: f64) -> Viewport {
    let r = v.rect;
    let world = GeoRect::world();
    let (dlon, dlat) = match direction {
        Direction::Left => (
            clamped_step(r.west(), -pan_fraction * r.width(), world.west()),
            0.0,
        ),
        Direction::Right => (
            clamped_step(r.east(), pan_fraction * r.width(), world.east()),
            0.0,
        ),
        Direction::Up => (
            0.0,
            clamped_step(r.north(), pan_fraction * r.height(), world.north()),
        ),
        Direction::Down => (
            0.0,
            clamped_step(r.south(), -pan_fraction * r.height(), world.south()),
        ),
    };
    Viewport::new(r.translated(dlon, dlat), v.zoom)
}

/// Halves (inward) or doubles the spans about the center. At the zoom limits
/// the viewport is returned unchanged. The flag reports a change of active
/// layer.
pub fn zoom(
    v: &Viewport,
    inward: bool,
    dataset: &Dataset,
    config: &SessionConfig,
) -> (Viewport, bool) {
    let next = if inward {
        (v.zoom < config.zoom_max).then(|| (v.zoom + 1, 0.5))
    } else {
        (v.zoom > config.zoom_min).then(|| (v.zoom - 1, 2.0))
    };
    let Some((level, factor)) = next else {
        return (*v, false);
    };
    let out = Viewport::new(v.rect.scaled_about_center(factor), level);
    let changed = dataset.layer_for_zoom(v.zoom).name != dataset.layer_for_zoom(level).name;
    (out, changed)
}

/// First feature in load order containing the viewport center.
pub fn center_region<'a>(v: &Viewport, layer: &'a Layer) -> Option<&'a str> {
    let c = v.rect.center();
    layer
        .features
        .iter()
        .find(|f| f.contains(c))
        .map(|f| f.name())
}

pub fn corner_regions(v: &Viewport, layer: &Layer) -> CornerRegions {
    v.rect.corners().map(|p| {
        layer
            .features
            .iter()
            .find(|f| f.contains(p))
            .map(|f| f.name().to_string())
    })
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ViewportStats {
    pub extremum_high: Option<NamedValue>,
    pub extremum_low: Option<NamedValue>,
    pub average: Option<f64>,
    pub visible_count: usize,
}

/// Statistics over features whose centroid is inside the viewport. Equal
/// extremes resolve to the earlier feature.
pub fn viewport_stats(v: &Viewport, layer: &Layer) -> ViewportStats {
    let mut stats = ViewportStats::default();
    let mut sum = 0.0;
    let mut high: Option<(&str, f64)> = None;
    let mut low: Option<(&str, f64)> = None;
    for f in layer
        .features
        .iter()
        .filter(|f| v.rect.contains(f.centroid()))
    {
        let x = f.value();
        stats.visible_count += 1;
        sum += x;
        if high.is_none_or(|(_, h)| x > h) {
            high = Some((f.name(), x));
        }
        if low.is_none_or(|(_, l)| x < l) {
            low = Some((f.name(), x));
        }
    }
    let named = |(name, value): (&str, f64)| NamedValue {
        name: name.to_string(),
        value,
    };
    stats.extremum_high = high.map(named);
    stats.extremum_low = low.map(named);
    if stats.visible_count > 0 {
        stats.average = Some(sum / stats.visible_count as f64);
    }
    stats
}

pub fn is_out_of_bounds(v: &Viewport, dataset_bbox: &GeoRect) -> bool {
    !v.rect.intersects(dataset_bbox)
}

/// Grid summary, groups, statistics and corners for one view.
pub fn full_view_description(
    dataset: &Dataset,
    v: &Viewport,
    mode: LowWindowMode,
) -> ViewDescription {
    let layer = dataset.layer_for_zoom(v.zoom);
    let rect = select_analysis_rect(dataset.bbox(), v.rect);
    let grid = summarize_grid(&layer.features, rect);
    let stats = viewport_stats(v, layer);
    // The dataset extent can be the smaller rectangle even when the view
    // shows none of it; an empty view reports no pattern.
    let pattern = if grid.non_empty_count() > 0 && stats.visible_count > 0 {
        detect_groups(&grid, mode)
    } else {
        PatternResult::default()
    };
    ViewDescription {
        title: dataset.title().to_string(),
        layer_name: layer.name.clone(),
        zoom_level: v.zoom,
        corner_regions: corner_regions(v, layer),
        pattern,
        extremum_high: stats.extremum_high,
        extremum_low: stats.extremum_low,
        average: stats.average,
        visible_count: stats.visible_count,
        dataset_label: dataset.label().to_string(),
        units: dataset.units().to_string(),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionParseError {
    #[error("empty action")]
    Empty,
    #[error("unknown action '{0}'")]
    UnknownVerb(String),
    #[error("'{verb}' needs {expected}")]
    MissingArgument {
        verb: String,
        expected: &'static str,
    },
    #[error("invalid argument '{arg}' for '{verb}' (expected {expected})")]
    BadArgument {
        verb: String,
        arg: String,
        expected: &'static str,
    },
    #[error("'{0}' takes no argument")]
    UnexpectedArgument(String),
}

/// One user command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Pan(Direction),
    Zoom { inward: bool },
    Info,
    Corners,
}

impl Action {
    pub fn name(&self) -> &'static str {
        match self {
            Action::Pan(_) => "pan",
            Action::Zoom { .. } => "zoom",
            Action::Info => "info",
            Action::Corners => "corners",
        }
    }

    pub fn argument(&self) -> Option<&'static str> {
        match self {
            Action::Pan(d) => Some(d.as_str()),
            Action::Zoom { inward: true } => Some("in"),
            Action::Zoom { inward: false } => Some("out"),
            Action::Info | Action::Corners => None,
        }
    }

    /// Builds an action from a verb and its optional argument.
    pub fn from_parts(verb: &str, arg: Option<&str>) -> Result<Action, ActionParseError> {
        const DIRECTIONS: &str = "left, right, up or down";
        const ZOOMS: &str = "in or out";
        let missing = |expected| ActionParseError::MissingArgument {
            verb: verb.to_string(),
            expected,
        };
        let bad = |arg: &str, expected| ActionParseError::BadArgument {
            verb: verb.to_string(),
            arg: arg.to_string(),
            expected,
        };
        match (verb, arg) {
            ("pan", None) => Err(missing(DIRECTIONS)),
            ("pan", Some(a)) => Direction::parse(a)
                .map(Action::Pan)
                .ok_or_else(|| bad(a, DIRECTIONS)),
            ("zoom", None) => Err(missing(ZOOMS)),
            ("zoom", Some("in")) => Ok(Action::Zoom { inward: true }),
            ("zoom", Some("out")) => Ok(Action::Zoom { inward: false }),
            ("zoom", Some(a)) => Err(bad(a, ZOOMS)),
            ("info", None) => Ok(Action::Info),
            ("corners", None) => Ok(Action::Corners),
            ("info" | "corners", Some(_)) => {
                Err(ActionParseError::UnexpectedArgument(verb.to_string()))
            }
            ("", _) => Err(ActionParseError::Empty),
            _ => Err(ActionParseError::UnknownVerb(verb.to_string())),
        }
    }
}

impl FromStr for Action {
    type Err = ActionParseError;

    /// Script syntax: `pan left`, `zoom in`, `info`, `corners`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut words = s.split_whitespace();
        let verb = words.next().ok_or(ActionParseError::Empty)?;
        let arg = words.next();
        if words.next().is_some() {
            return Err(ActionParseError::UnexpectedArgument(s.trim().to_string()));
        }
        Action::from_parts(verb, arg)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.argument() {
            Some(arg) => write!(f, "{} {}", self.name(), arg),
            None => f.write_str(self.name()),
        }
    }
}

/// One line of the newline-delimited action log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ActionRecord {
    pub timestamp: DateTime<Utc>,
    pub session_id: String,
    pub action: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub arg: Option<String>,
    /// Post-action viewport as `[west, south, east, north]`.
    pub rect: [f64; 4],
    pub zoom: u32,
}

impl ActionRecord {
    pub fn to_action(&self) -> Result<Action, ActionParseError> {
        Action::from_parts(&self.action, self.arg.as_deref())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("action records always serialize")
    }
}

/// Result of applying one action.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionOutcome {
    pub announcement: Announcement,
    pub viewport: Viewport,
    pub layer_name: String,
    pub out_of_bounds: bool,
    pub layer_changed: bool,
}

/// A navigable view over one dataset with an append-only action log.
#[derive(Debug, Clone)]
pub struct Session {
    id: String,
    dataset: Arc<Dataset>,
    config: SessionConfig,
    viewport: Viewport,
    log: Vec<ActionRecord>,
}

impl Session {
    pub fn new(id: impl Into<String>, dataset: Arc<Dataset>, config: SessionConfig) -> Self {
        let viewport = Viewport::initial(&dataset, &config);
        Self {
            id: id.into(),
            dataset,
            config,
            viewport,
            log: Vec::new(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dataset(&self) -> &Arc<Dataset> {
        &self.dataset
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn viewport(&self) -> Viewport {
        self.viewport
    }

    pub fn log(&self) -> &[ActionRecord] {
        &self.log
    }

    pub fn layer(&self) -> &Layer {
        self.dataset.layer_for_zoom(self.viewport.zoom)
    }

    pub fn out_of_bounds(&self) -> bool {
        is_out_of_bounds(&self.viewport, &self.dataset.bbox())
    }

    pub fn describe(&self) -> ViewDescription {
        full_view_description(&self.dataset, &self.viewport, self.config.low_window_mode)
    }

    pub fn apply(&mut self, action: Action) -> ActionOutcome {
        self.apply_at(action, Utc::now())
    }

    /// Applies `action` and appends it to the log. Timestamps earlier than
    /// the last logged one are raised to keep the log ordered.
    pub fn apply_at(&mut self, action: Action, timestamp: DateTime<Utc>) -> ActionOutcome {
        let mut layer_changed = false;
        let announcement = match action {
            Action::Pan(direction) => {
                self.viewport = pan(&self.viewport, direction, self.config.pan_fraction);
                if self.out_of_bounds() {
                    render_out_of_bounds()
                } else {
                    render_move(direction, center_region(&self.viewport, self.layer()))
                }
            }
            Action::Zoom { inward } => {
                let (next, changed) = zoom(&self.viewport, inward, &self.dataset, &self.config);
                self.viewport = next;
                layer_changed = changed;
                render_zoom(inward, &self.layer().name)
            }
            Action::Info => render_summary(&self.describe()),
            Action::Corners => render_corners(&corner_regions(&self.viewport, self.layer())),
        };

        let timestamp = self
            .log
            .last()
            .map_or(timestamp, |last| timestamp.max(last.timestamp));
        self.log.push(ActionRecord {
            timestamp,
            session_id: self.id.clone(),
            action: action.name().to_string(),
            arg: action.argument().map(str::to_string),
            rect: self.viewport.rect.to_array(),
            zoom: self.viewport.zoom,
        });

        ActionOutcome {
            announcement,
            viewport: self.viewport,
            layer_name: self.layer().name.clone(),
            out_of_bounds: self.out_of_bounds(),
            layer_changed,
        }
    }
}
