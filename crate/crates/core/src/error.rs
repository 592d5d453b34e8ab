use thiserror::Error;

/// Errors raised by the library.
///
/// The CLI maps [`Error::Budget`] to exit status 2 and everything else to 1.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Arithmetic outside an operation's domain (inverse of zero, division by
    /// the zero polynomial, an envelope evaluated where it is vacuous).
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs that violate a stated precondition.
    #[error("validation error: {0}")]
    Validation(String),

    /// A hypothesis of a bound does not hold at the given parameters.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// An enumeration would exceed the configured budget.
    #[error("budget exceeded: {what} requires {required}, limit is {limit}")]
    Budget {
        what: String,
        required: String,
        limit: u64,
    },

    /// Floating-point root finding or similar numeric failures.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Malformed polynomial text or JSON.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn budget(what: impl Into<String>, required: impl ToString, limit: u64) -> Self {
        Error::Budget {
            what: what.into(),
            required: required.to_string(),
            limit,
        }
    }
}
