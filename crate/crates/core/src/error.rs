use thiserror::Error;

/// Errors shared across the whole crate.
#[derive(Debug, Error)]
pub enum DmlError {
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("exponent out of range: {0} (must lie in [1, inf])")]
    ExponentOutOfRange(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("field mismatch: cannot mix real and complex objects")]
    FieldMismatch,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, DmlError>;
