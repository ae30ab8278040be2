use crate::f2::BitVec;
use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    /// Two distinct errors of weight at most `ell` have the same syndrome, so the
    /// code distance is below `2 ell + 1`.
    #[error("syndrome collision between errors {first} and {second}")]
    SyndromeCollision { first: BitVec, second: BitVec },

    /// The syndrome is not in the table: the error weight exceeds `ell`.
    #[error("unknown syndrome {0}")]
    UnknownSyndrome(BitVec),

    #[error("{what} exceeds cap: requested {requested}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument out of domain in {context}: {value}")]
    OutOfDomain { context: &'static str, value: f64 },

    #[error("root not bracketed in {0}")]
    RootNotBracketed(&'static str),

    #[error("singular system in {0}")]
    Singular(&'static str),

    #[error("degenerate state: {0}")]
    Degenerate(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
