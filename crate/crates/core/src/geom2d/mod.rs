//! Planar primitives: unconditional polygons, generating profiles and their polars.

mod point;
mod polygon;
mod profile;

pub use point::Point2;
pub use polygon::{Edge, UnconditionalPolygon};
pub use profile::{conjugate_at, AnalyticProfile, GeneratingFunction, NamedProfile, Profile, CONJUGATE_BRACKET};

/// Points closer than this are merged; points this close to the line through their
/// neighbours are dropped.
pub const MERGE_TOL: f64 = 1e-12;
