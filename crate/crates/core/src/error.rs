use alloc::string::String;

/// Failure modes shared by every layer of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Argument outside the supported domain (N < 1, non-positive q, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A rational function was specialised at one of its poles.
    #[error("pole: {0}")]
    Pole(String),
    /// A rewriting step budget was exhausted.
    #[error("fuel exhausted after {0} steps")]
    Fuel(u64),
    /// Completion did not stabilise within the configured bounds.
    #[error("completion failed on overlap {overlap}")]
    CompletionFailure { overlap: String },
    /// No candidate convention passed the pinning checks.
    #[error("no consistent convention: {0}")]
    Convention(String),
    /// Defining relations collapse (e.g. 1 = 0 derived).
    #[error("inconsistent presentation: {0}")]
    Inconsistency(String),
    /// A computation would exceed memory or size bounds.
    #[error("resource limit: {0}")]
    Resource(String),
    /// A verification routine found a counterexample.
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
