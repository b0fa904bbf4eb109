//! Spoken-style summaries of choropleth map viewports.
//!
//! The pipeline picks an analysis rectangle, bins every region's centroid
//! into a 3x3 grid, ranks the cells by mean value and looks for adjacent,
//! sequentially ranked cells to report as "high" or "low" areas. A
//! [`session::Session`] wraps the pipeline in a pan/zoom state machine that
//! produces one [`narration::Announcement`] per action.

pub mod geometry;
pub mod grid;
pub mod grouping;
pub mod ingest;
pub mod narration;
pub mod session;

pub use geometry::{GeoFeature, GeoPoint, GeoRect, GeometryError};
pub use grid::{summarize_grid, GridSummary};
pub use grouping::{detect_groups, LocationIndicator, LowWindowMode, PatternResult, SpatialGroup};
pub use ingest::{load_layer, load_manifest, Dataset, IngestError, Layer};
pub use narration::{Announcement, AnnouncementKind, Direction, ViewDescription};
pub use session::{Action, ActionOutcome, ActionRecord, Session, SessionConfig, Viewport};
