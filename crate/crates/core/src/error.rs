use thiserror::Error;

use crate::report::Report;

/// Errors raised before any axiom check can run, or by arithmetic.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("input failed validation: {}", .0.summary())]
    InvalidInput(Box<Report>),
    #[error("{0}")]
    Refused(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}
