use thiserror::Error;

/// Crate-wide error type. Input problems (bad dimensions, unparsable
/// scalars, non-subalgebra bases) are kept distinct from negative
/// mathematical verdicts, which are never reported as errors.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("structure verification failed for {subject}: {failed}")]
    StructureInvalid { subject: String, failed: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
