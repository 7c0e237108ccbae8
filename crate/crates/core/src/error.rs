use thiserror::Error;

/// Errors raised by the Garside toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GarsideError {
    #[error("structure mismatch: `{left}` vs `{right}`")]
    StructureMismatch { left: String, right: String },

    #[error("invalid structure descriptor `{0}`")]
    BadDescriptor(String),

    #[error("unsupported structure: {0}")]
    Unsupported(String),

    #[error("unknown atom {token} at position {position}")]
    UnknownAtom { token: String, position: usize },

    #[error("malformed token `{token}` at position {position}: {reason}")]
    MalformedToken {
        token: String,
        position: usize,
        reason: String,
    },

    #[error("guard exceeded: {what} is {requested}, bound is {bound}")]
    GuardExceeded {
        what: String,
        requested: usize,
        bound: usize,
    },

    #[error("invalid axis: {0}")]
    InvalidAxis(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl GarsideError {
    pub fn guard(what: impl Into<String>, requested: usize, bound: usize) -> Self {
        GarsideError::GuardExceeded {
            what: what.into(),
            requested,
            bound,
        }
    }

    /// True for refusals caused by a configured size bound.
    pub fn is_guard(&self) -> bool {
        matches!(self, GarsideError::GuardExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, GarsideError>;
