//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Geometric input the primitives cannot answer for (coincident points,
    /// collinear ray/segment overlap, ambiguous shadow).
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    /// Two non-adjacent edges intersect.
    #[error("polygon is not simple: edges {i} and {j} intersect")]
    NotSimple { i: usize, j: usize },

    /// Vertices are not in counterclockwise order.
    #[error("vertices are not in counterclockwise order")]
    NotCcw,

    /// The viewpoint is not strictly interior.
    #[error("viewpoint lies outside the polygon")]
    ViewpointOutside,

    /// A configuration the sweep logic cannot order: equal angles about the
    /// viewpoint, antipodal angles, viewpoint collinear with an edge, or a
    /// query point on the boundary.
    #[error("degenerate position at vertices {i} and {j}")]
    DegeneratePosition { i: usize, j: usize },

    /// A chain endpoint was flagged as carrying a window, but no chain edge
    /// is hit by its ray. Signals a wrong flag upstream.
    #[error("no window hit beyond chain endpoint {index}")]
    WindowNotFound { index: usize },

    /// Validated mode found flags that disagree with the per-vertex
    /// visibility test. Carries the disagreeing vertex indices.
    #[error("pipeline discrepancy at critical vertices {indices:?}")]
    PipelineDiscrepancy { indices: Vec<usize> },

    /// A random generator exceeded its swap or resample budget.
    #[error("generation timed out")]
    GenerationTimeout,

    /// Polygon file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
