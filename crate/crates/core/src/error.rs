use thiserror::Error;

/// Errors raised by the algebra, representation and oracle layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// z = 0 gives back the ordinary Heisenberg algebra.
    #[error("trivial extension: z must be nonzero")]
    TrivialExtension,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// 2·L·s + 1 must be strictly positive.
    #[error("outside the domain 2Ls+1 > 0 (L = {l}, s = {s})")]
    Domain { l: f64, s: f64 },

    #[error("non-finite matrix entry")]
    NonFinite,

    #[error("singular matrix")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
