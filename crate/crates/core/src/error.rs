//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An index or order parameter is outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input data violates a structural requirement (e.g. Hermitian symmetry).
    #[error("validation error: {0}")]
    Validation(String),

    /// A mathematical precondition does not hold for the given data.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Evaluation at the singular point of a pole-type function.
    #[error("singularity: {0}")]
    Singularity(String),

    /// A named configuration inequality failed; the run cannot be set up.
    #[error("configuration error: {0}")]
    Configuration(String),

    /// Boundary data incompatible with a k-subharmonic solution.
    #[error("infeasible data: {0}")]
    InfeasibleData(String),

    /// An iterative solver failed to converge; carries diagnostics.
    #[error("solver did not converge: {summary}")]
    Nonconvergence {
        summary: String,
        residual_history: Vec<f64>,
    },

    #[error("config parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn nonconvergence(summary: impl Into<String>, history: Vec<f64>) -> Self {
        Error::Nonconvergence {
            summary: summary.into(),
            residual_history: history,
        }
    }
}
