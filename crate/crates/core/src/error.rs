//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by the toolkit.
///
/// `Domain` covers precondition violations (a composite modulus where a prime
/// is required, a zero parameter, an unsupported case tag).  `Parse` carries
/// the byte offset of the first offending character.  `NotDivisible` is the
/// failure mode of every exact-division step; it names the quantity that did
/// not divide out so that normalization bugs surface with context.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Syntax error in a polynomial or scalar string.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// An exact division left a remainder.
    #[error("exact division failed: {0}")]
    NotDivisible(String),

    /// A polynomial that was expected to be a perfect square is not.
    #[error("not a perfect square: {0}")]
    NotASquare(String),

    /// Operation is defined but deliberately not implemented for this input.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Candidate budget exhausted before the region was covered.
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    /// Checkpoint file does not match the running task.
    #[error("checkpoint mismatch: {0}")]
    CheckpointMismatch(String),

    /// IO error (checkpoints, report files).
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Serialization error.
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),

    /// Internal inconsistency: a derived quantity violated an invariant the
    /// construction is supposed to guarantee.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
