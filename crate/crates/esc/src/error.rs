//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EscError {
    /// A field or flux vector has the wrong length for its grid.
    #[error("dimension mismatch: expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Invalid model or solver configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// The mass target cannot be met inside the box [-1, 1]^n.
    #[error("infeasible constraint: |V0| = {v0_abs} exceeds n = {n}")]
    InfeasibleConstraint { v0_abs: f64, n: usize },

    /// The dynamic step size collapsed below the useful range.
    #[error("solver stalled: step size {tau} fell below {floor}")]
    SolverStalled { tau: f64, floor: f64 },

    /// A time-stepping scheme produced non-finite values.
    #[error("numerical instability at step {step}; try a smaller time step")]
    Instability { step: usize },

    /// Contour extraction found no zero crossing.
    #[error("empty contour: the field does not change sign")]
    EmptyContour,

    /// Operation not defined for this model or dimension.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, EscError>;

impl EscError {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        EscError::Io {
            path: path.into(),
            source,
        }
    }
}
