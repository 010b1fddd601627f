use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus exponent {0} out of range (expected 1..={max})", max = crate::ring::MAX_BITS)]
    ModulusOutOfRange(u32),

    #[error("modulus mismatch: Z_2^{left} vs Z_2^{right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("{value} is even and has no inverse modulo 2^{bits}")]
    NotInvertible { value: u64, bits: u32 },

    /// A construction or bound was asked for outside its parameter range.
    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Raised when a decoder finds more than one explanation for a syndrome,
    /// which a certified code cannot produce.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
