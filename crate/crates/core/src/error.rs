use thiserror::Error;

/// Errors surfaced by the exact-arithmetic kernel and the proof pipeline.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input violates a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A Pellian equation has no solution of the requested shape.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// An exact identity that must hold for valid inputs failed; indicates a
    /// bug or corrupted input, never a numerical artifact.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    /// A certified comparison or enclosure could not be decided within the
    /// precision policy's ceiling.
    #[error("precision exhausted at {digits} digits: {context}")]
    PrecisionExhausted { digits: u32, context: String },

    /// A quantity that must be irrational on the proof path resolved to an
    /// exact rational.
    #[error("rational input where an irrational was required: {0}")]
    RationalInput(String),

    /// A reduction step could not establish a positive eta after all retries.
    #[error("reduction step failed: {0}")]
    StepFailed(String),

    /// Request outside the range the toolkit covers.
    #[error("out of scope: {0}")]
    OutOfScope(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }
}
