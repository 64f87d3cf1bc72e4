use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation {0:?}: not a bijection of 1..n")]
    InvalidPermutation(Vec<u8>),
    #[error("degree mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("{what} out of range: {value} not in {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },
    #[error("ordered tuple has repeated entry {0}")]
    RepeatedEntry(u64),
    #[error("{0:?} is not a rearrangement of {1:?}")]
    NotARearrangement(Vec<u64>, Vec<u64>),
    #[error("{0:?} is not an order-preserving subset of {1:?}")]
    NotASubset(Vec<u64>, Vec<u64>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator vanishes at q = {0}")]
    Pole(String),
    #[error("singular specialization: matrix is not invertible{0}")]
    Singular(String),
    #[error("mode {0} already occupied; repeated modes are not supported")]
    RepeatedMode(u64),
    #[error("no energy assigned to mode {0}")]
    MissingEnergy(u64),
    #[error("coefficients for the {0}-particle term are unavailable")]
    CoefficientsUnavailable(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
