use thiserror::Error;

/// Errors raised by the measure-algebra computations and the experiment runner.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid angle: denominator must be positive (got {0})")]
    InvalidAngle(i64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit exceeded: {what} = {requested} > {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("not decidable exactly: {0}")]
    NotDecidable(String),

    #[error("sequence is not invertible: |a_{index}| = {modulus} < separation {separation}")]
    NotInvertible {
        index: i64,
        modulus: f64,
        separation: f64,
    },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
