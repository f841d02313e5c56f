//! Error type shared by all modules.

/// Errors raised by construction, decoding, and resource guards.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A textual spec (directive word, intercept, digit string) did not parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// The requested computation would materialize more symbols than the cap.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// The operation needs a regular directive word (or another property the
    /// given word does not have).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A digit string violates the Ostrowski conditions where a valid
    /// intercept is required.
    #[error("invalid intercept: {0}")]
    InvalidIntercept(String),

    /// A word prefix could not be decoded as an image under the directive
    /// word's morphisms.
    #[error("decode inconsistency: {0}")]
    DecodeInconsistency(String),

    /// A scan reached its horizon without the answer stabilizing.
    #[error("horizon exceeded: {0}")]
    HorizonExceeded(String),

    /// A factor collection did not reach the expected size.
    #[error("insufficient horizon: {0}")]
    InsufficientHorizon(String),

    /// The coefficients do not determine a dominant positive root.
    #[error("bad recurrence: {0}")]
    BadRecurrence(String),
}
