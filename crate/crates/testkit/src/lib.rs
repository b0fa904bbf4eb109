//! Slow, obvious reference implementations for the test suites.
//!
//! Nothing here depends on `mapvoice-core`; every oracle works on plain
//! tuples and arrays and is written from the definitions, not from the
//! production code paths.

pub mod geometry;
pub mod grid;
pub mod grouping;

/// A polygon ring as `(lon, lat)` pairs without the closing vertex.
pub type Ring = Vec<(f64, f64)>;
