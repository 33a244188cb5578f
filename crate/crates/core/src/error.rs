use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-domain input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A stated precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A window search found no admissible integer; the caller's
    /// nonnegativity assertion on the polynomial was false.
    #[error("no admissible m in window [{lo}, {hi}]")]
    NotFound { lo: i64, hi: i64 },

    /// A bracket stayed too wide to certify a verdict after refinement.
    #[error("bracket not certified: {0}")]
    Uncertified(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionViolated(msg.into())
    }
}
