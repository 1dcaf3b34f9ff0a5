use alloc::string::String;

use crate::criteria::Witness;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Input tables violate a structural invariant.
    #[error("validation error: {0}")]
    Validation(String),
    /// Argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An enumeration or truncation exceeded its configured cap.
    #[error("resource limit exceeded: {what} (cap {cap})")]
    Resource { what: String, cap: usize },
    /// The graph fails a hypothesis needed by the construction.
    #[error("graph condition fails: {0:?}")]
    GraphCondition(Witness),
    /// A factorisation was requested in a groupoid that is not strongly graded.
    #[error("not strongly graded: morphism {morphism} has no factorisation")]
    NotStronglyGraded { morphism: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A constructed certificate failed its own re-verification.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
