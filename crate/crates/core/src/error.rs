use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("images do not form a permutation of 0..{0}")]
    NotPermutation(usize),

    #[error("group has more than {cap} elements")]
    ElementCapExceeded { cap: usize },

    #[error("lattice has more than {cap} subgroups")]
    SubgroupCapExceeded { cap: usize },

    #[error("subgroup is not contained in the ambient group")]
    NotContained,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("unknown group constructor `{0}`")]
    UnknownConstructor(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("q = {q} is outside the table regime: {reason}")]
    OutsideRegime { q: u64, reason: String },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("field element has no inverse")]
    ZeroInverse,

    #[error("built group has order {got}, expected {expected}")]
    OrderMismatch { got: u128, expected: u128 },

    #[error("hardcoded data failed validation: {0}")]
    BadData(String),

    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
