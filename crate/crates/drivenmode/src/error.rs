//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A query outside the sampled/tabulated range.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative scheme failed to reach the requested tolerance.
    /// Carries the error estimate it did achieve.
    #[error("convergence failure in {context}: achieved {achieved:.3e}, required {required:.3e}")]
    Convergence {
        context: &'static str,
        achieved: f64,
        required: f64,
    },

    /// A stated precondition does not hold for the given inputs.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Inputs violate an identity they are required to satisfy.
    #[error("inconsistent input: {0}")]
    Inconsistency(String),

    /// Malformed input data (CSV/JSON definition files).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
