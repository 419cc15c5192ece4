use thiserror::Error;

/// Errors produced by code construction, decoding and enumeration.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("stabilizer generators {first} and {second} do not commute")]
    NotSelfOrthogonal { first: usize, second: usize },

    #[error("syndrome is not in the column space of the parity-check matrix")]
    InconsistentSyndrome,

    #[error("graph is not a cycle code: variable {variable} has degree {degree}")]
    NotCycleCode { variable: usize, degree: usize },

    #[error("enumeration budget exceeded: {needed} candidates, limit {limit}")]
    BudgetExceeded { needed: u128, limit: u128 },

    #[error("no failing trials to summarize")]
    NoFailures,

    #[error("unknown decoder `{0}`")]
    UnknownDecoder(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
