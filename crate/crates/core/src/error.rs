use thiserror::Error;

/// Errors reported by problem construction and solver runs.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ViError {
    /// Invalid parameters, ids or sizes.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A non-finite value appeared in an iterate or operator value.
    #[error("numerical failure at iteration {iteration}: {what}")]
    Numerical { iteration: usize, what: String },
}

pub type Result<T> = std::result::Result<T, ViError>;

pub(crate) fn config_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(ViError::Config(msg.into()))
}
