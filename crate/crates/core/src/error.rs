//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by geometric constructions and queries.
#[derive(Debug, Error)]
pub enum GeomError {
    /// Body construction rejected; the message names the violated invariant.
    #[error("invalid body: {0}")]
    InvalidBody(String),

    /// The input facets describe an unbounded region.
    #[error("unbounded body: {0}")]
    Unbounded(String),

    /// A point had the wrong number of coordinates.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An operation required a boundary point but received an interior one.
    #[error("interior point: {0}")]
    InteriorPoint(String),

    /// A point lies outside the closed body.
    #[error("point outside the closed body: {0}")]
    OutsidePoint(String),

    /// An operation required an interior point but received a boundary one.
    #[error("boundary point not allowed: {0}")]
    BoundaryPoint(String),

    /// Two points that must be distinct coincide within tolerance.
    #[error("coincident points")]
    CoincidentPoints,

    /// Face-lattice machinery is only defined for polytopes.
    #[error("face lattice only for polytopes")]
    NotPolytope,

    /// A horofunction description violates its invariants.
    #[error("invalid horofunction: {0}")]
    InvalidHorofunction(String),

    /// A point lies outside the open cone required by the operation.
    #[error("point outside the open cone: {0}")]
    OutsideCone(String),

    /// Catch-all for malformed arguments (sample counts, levels, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Horofunction limit matching found two candidates within tolerance.
    #[error("ambiguous horofunction limit: {0}")]
    AmbiguousLimit(String),

    /// An iterative computation failed to converge.
    #[error("numeric non-convergence: {0}")]
    NonConvergence(String),

    /// A linear solve or fit encountered a (near-)singular system.
    #[error("singular system: {0}")]
    Singular(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;

impl GeomError {
    /// Exit code for the CLI: 1 I/O, 2 geometry, 3 numeric non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            GeomError::Io(_) | GeomError::Parse(_) => 1,
            GeomError::NonConvergence(_) | GeomError::AmbiguousLimit(_) => 3,
            _ => 2,
        }
    }
}
