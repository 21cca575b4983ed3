use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator {denominator} vanishes at s = {at}")]
    Pole { denominator: String, at: String },
    #[error("q^({0}) is not a quarter-integer power of q")]
    NotQuarterPower(String),
    #[error("q = {0} is outside the open interval (0, 1)")]
    QOutOfRange(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("inconsistent constraint system at (n = {n}, k = {k}): residual {residual}")]
    InconsistentSystem { n: usize, k: usize, residual: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
