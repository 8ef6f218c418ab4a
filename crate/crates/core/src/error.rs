use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the core operations.
///
/// `Domain` covers violated preconditions on inputs (out-of-range vertices,
/// malformed parameters); `Budget` means an operation refused to start
/// because the requested enumeration exceeds its configured limit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("enumeration budget exceeded: need {required}, limit {limit}")]
    Budget { required: String, limit: String },
    #[error("exponent overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
