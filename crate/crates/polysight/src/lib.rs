//! Visibility polygons from an interior viewpoint, computed in linear time
//! under a constrained workspace: the input is a read-only vertex array,
//! the output goes to a write-only sink, and the working state is one flag
//! bit per critical vertex plus a constant number of scalars.
//!
//! The crate pairs the constrained engine with an independent quadratic
//! oracle and a workspace meter, so both the answers and the resource
//! claims are checked rather than assumed. Start with the runnable
//! examples (`cargo run --example notched_square`) or the [`driver`]
//! module.

pub mod chain;
pub mod cli;
pub mod corpus;
pub mod driver;
pub mod effective;
pub mod error;
pub mod geom;
pub mod oracle;
pub mod polygon;
pub mod svg;

pub use chain::{Chain, ChainWindow};
pub use driver::{visibility_polygon, DriverError, OutputSink, RunStats};
pub use effective::{compute_effective, start_vertex, EffectiveFlags, Mode};
pub use error::{Error, Result};
pub use geom::{orientation, polar_of, ray_hit, shadow_point, Orientation, Point, PolarCoord};
pub use polygon::{
    classify_vertex, critical_count, point_in_polygon, validate, CriticalKind, MeterSnapshot,
    PolygonInput, TurnRule, WorkspaceMeter,
};
