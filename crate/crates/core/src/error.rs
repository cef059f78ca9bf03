//! Crate-wide error type.

use crate::scalar::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Two operands belong to different fields.
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Malformed request: bad parameter values, empty argument lists, ...
    #[error("usage error: {0}")]
    Usage(String),

    /// A resource guard rejected the request. Guards exist so that a typo
    /// does not start a computation that will never finish; each carries the
    /// name of the override that lifts it.
    #[error("guard: {what} (limit {limit}, requested {requested}); override with {flag}")]
    Guard {
        what: &'static str,
        limit: u64,
        requested: u64,
        flag: &'static str,
    },

    /// A mathematical precondition of the requested check is violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
