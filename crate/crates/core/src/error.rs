use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 2^31)")]
    NotPrime(u64),
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("subset index out of range: {0}")]
    OutOfRange(String),
    #[error("enumeration of {points} projective points exceeds the cap of {cap}")]
    EnumerationCap { points: u128, cap: u128 },
    #[error("matrix of {rows}x{cols} exceeds the cap of {cap} entries")]
    MatrixCap { rows: u128, cols: u128, cap: u128 },
    #[error("degree b={0} is not supported here (expected 1 or 2)")]
    UnsupportedDegree(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
