use thiserror::Error;

use crate::cyclotomic::CycElem;

/// Errors raised by the exact arithmetic layer and the evaluators built on it.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("gcd undefined")]
    GcdUndefined,
    #[error("not invertible as series")]
    SeriesNotInvertible,
    #[error("invalid order: {0}")]
    InvalidOrder(i64),
    #[error("not invertible")]
    NotInvertible,
    #[error("pole: 1-ζ^0 = 0 (r = {r}, n = {n})")]
    Pole { n: u32, r: i64 },
    #[error("not rational: {0}")]
    NotRational(Box<CycElem>),
    #[error("negative upper index: {0}")]
    NegativeUpperIndex(i64),
    #[error("negative argument: ({0}, {1})")]
    NegativeArgument(i64, i64),
    #[error("use classical Bernoulli polynomial path (lambda = 0)")]
    ClassicalLimit,
    #[error("instance too large for enumeration ({tuples} tuples > cap {cap}); use DP")]
    TooLarge { tuples: String, cap: u64 },
    #[error("invalid index vector: {0}")]
    InvalidIndex(String),
    #[error("slot {j} out of range 1..={m}")]
    SlotOutOfRange { j: usize, m: usize },
    #[error("s = {0} not tabulated (1..=9)")]
    NotTabulated(u32),
    #[error("A = {0} has no polynomial display (2..=5); use the degenerate Bernoulli form")]
    NoPolynomialDisplay(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
