use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor {0} is not a single pi-power term")]
    NonMonomialDivisor(String),
    #[error("value exceeds binary64 range")]
    Overflow,
    #[error("jet base points differ ({0} vs {1})")]
    BaseMismatch(String, String),
    #[error("order overflow: need order {needed}, have {available}")]
    OrderOverflow { needed: usize, available: usize },
    #[error("pole at base point: {0}")]
    Pole(&'static str),
    #[error("{0} of a jet whose constant term {1} is not exactly representable")]
    Transcendental(&'static str, String),
    #[error("non-positive value where positivity is required: {0}")]
    NonPositive(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("admissibility violated at reduction step k={k}: boundary value {value}")]
    Admissibility { k: usize, value: String },
    #[error("structural constraint violated: {0}")]
    Structure(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
