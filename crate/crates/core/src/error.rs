//! Error types shared across the crate.

/// Errors produced by manifold operations, estimators, and fitting routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A coordinate vector had the wrong length for the manifold.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An operation that needs at least one point received none.
    #[error("empty point set")]
    EmptyPointSet,

    /// A parameter was outside its valid range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The logarithm map was requested at (or numerically on) the cut locus,
    /// where the minimizing geodesic is not unique.
    #[error("point lies on the cut locus: {0}")]
    CutLocus(String),

    /// A point could not be projected onto the manifold (e.g. the zero vector
    /// has no closest point on a sphere).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A numerical routine failed to produce a usable result.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
