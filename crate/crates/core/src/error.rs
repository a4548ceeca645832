use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry {0} is not strictly between 0 and 1")]
    OutOfRange(usize),
    #[error("entry {0} is not strictly positive")]
    NotPositive(usize),
    #[error("vector is empty")]
    Empty,
    #[error("cannot parse rational literal {0:?}")]
    Parse(String),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("r = {r} is outside the allowed range 1..={max}")]
    BadR { r: usize, max: usize },
    #[error("entries must be non-increasing (violated at index {0})")]
    NotSorted(usize),
    #[error("operation requires gamma < 1")]
    NotApplicable,
    #[error("wrong regime: operation requires gamma < 1")]
    WrongRegime,
    #[error("m = {m} exceeds the enumeration budget (max m = {max_m})")]
    TooLarge { m: usize, max_m: usize },
    #[error("simulation budget exceeded: {requested} steps requested, limit {limit}")]
    StepBudget { requested: u128, limit: u128 },
    #[error("invalid simulation config: {0}")]
    BadConfig(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
