use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("insufficient Adams data: need p_{needed}, character is known up to p_{bound}")]
    InsufficientAdamsData { needed: u32, bound: u32 },

    #[error("insufficient profile data: {0}")]
    InsufficientProfileData(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("divergent zeta value: s = {s} must exceed dim = {dim}")]
    DivergentZeta { s: i64, dim: u32 },

    #[error("series has non-unital constant term")]
    NonUnitalSeries,

    #[error("unsupported dimension n = {0} (symmetric-group case out of scope)")]
    UnsupportedDimension(u32),

    #[error("missing data for symbol {0}")]
    MissingSymbol(String),

    #[error("evaluation hits a pole at X = {0}")]
    Pole(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("census budget exceeded: {forms} forms requested, cap is {cap} (raise the cap to at least {forms})")]
    BudgetExceeded { forms: u128, cap: u128 },

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("form has {got} coefficients, expected {expected}")]
    FormLength { got: usize, expected: usize },

    #[error("degree {degree} exceeds census bound K = {bound}")]
    DegreeExceedsBound { degree: u32, bound: u32 },

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
