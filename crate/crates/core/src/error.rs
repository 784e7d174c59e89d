use thiserror::Error;

use crate::basis::BasisKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),

    #[error("basis mismatch: {0}")]
    Mismatch(String),

    #[error("wrong basis kind: expected {expected:?}, got {got:?}")]
    WrongKind { expected: BasisKind, got: BasisKind },

    #[error("axis {axis} out of range 1..={n}")]
    AxisOutOfRange { axis: usize, n: usize },

    #[error("invalid Poisson structure: {0}")]
    InvalidStructure(String),

    #[error("outside validity domain: {0}")]
    OutOfDomain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("prime {0} divides a denominator")]
    BadPrime(u64),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("malformed matrix file: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
