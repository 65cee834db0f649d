use thiserror::Error;

use crate::handlebody::BasisTriple;

pub type Result<T> = std::result::Result<T, SkeinError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("singular system: {0}")]
    Singular(String),

    #[error("invalid basis triple ({0}, {1}, {2}): need b even, b <= 2a, b <= 2c")]
    InvalidTriple(i64, i64, i64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("triple {0} is outside the range of case {1}")]
    CaseRange(BasisTriple, u8),

    #[error("pole: {0}")]
    Pole(String),

    #[error("oracle cap exceeded: {0}")]
    CapExceeded(String),

    #[error("not a unit in the localized ring")]
    NotAUnit,

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
