use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("inflation block {0} is empty")]
    EmptyBlock(usize),

    /// A desk-scale guard refused the request. `limit` can be raised by the caller.
    #[error("size guard: {what} = {requested} exceeds the limit {limit}")]
    SizeGuard {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("label {label} is not an element of the poset (size {size})")]
    UnknownLabel { label: usize, size: usize },

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, requested: usize, limit: usize) -> Result<()> {
    if requested > limit {
        Err(Error::SizeGuard {
            what,
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}
