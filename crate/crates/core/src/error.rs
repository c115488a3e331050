use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator index {index} out of range for dimension {n}")]
    InvalidDimension { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("kernel evaluated at a singular point")]
    Singularity,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix {index} is not Hermitian (residual {residual:e})")]
    NotHermitian { index: usize, residual: f64 },

    #[error("operators do not commute (residual {residual:e})")]
    NonCommuting { residual: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("zero multivector has no distribution")]
    ZeroMultivector,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
