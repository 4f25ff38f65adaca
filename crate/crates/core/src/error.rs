use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function (e.g. `n = 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// A block, table or memo exceeded its configured size.
    #[error("capacity error: requested {requested}, maximum {max}")]
    Capacity { requested: u64, max: u64 },

    /// A checked 64-bit accumulation overflowed.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    /// An input does not satisfy the hypotheses required by the operation.
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    /// A caller-side contract such as `a * b = x` was broken.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Non-finite floating point values where finite ones were required.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// An unconditional check failed.
    #[error("assertion failed for {claim} at x={x}: {detail}")]
    Assertion {
        claim: String,
        x: u64,
        detail: String,
    },

    #[error("malformed file {path}: {reason}")]
    Format { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
