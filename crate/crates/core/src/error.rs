use thiserror::Error;

/// Errors raised by the algebra, homology and operator layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a chain complex: {0}")]
    NotAComplex(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    Length { expected: usize, actual: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid Lie algebra: {0}")]
    InvalidLieAlgebra(String),

    #[error("operands belong to different algebras ({left} vs {right})")]
    ParentMismatch { left: String, right: String },

    #[error("size budget exceeded in degree {degree}: {size} basis elements > budget {budget}")]
    Budget {
        degree: usize,
        size: u128,
        budget: usize,
    },

    #[error("trace undefined: operator is not trace-class (not in I0)")]
    NotTraceClass,

    #[error("{what}: constructions disagree in degree {degree} ({primary} vs {secondary})")]
    RouteDisagreement {
        what: String,
        degree: usize,
        primary: usize,
        secondary: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
