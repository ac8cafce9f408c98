use thiserror::Error;

/// Errors raised by the class calculus and the certificate engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Parameters outside the domain of an operation.
    #[error("invalid input: {0}")]
    Input(String),
    /// A request would exceed a documented resource limit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A certificate was requested without the hypotheses it needs.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    /// Arithmetic between classes living on different spaces.
    #[error("space mismatch: {left} vs {right}")]
    SpaceMismatch { left: String, right: String },
    /// Malformed textual input (rationals, partitions, JSON payloads).
    #[error("parse error: {0}")]
    Parse(String),
    /// Two independent constructions of the same object disagreed.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
