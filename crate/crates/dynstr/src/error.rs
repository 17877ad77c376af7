use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("position {pos} out of range (length {len})")]
    OutOfRange { pos: usize, len: usize },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: i64, hi: i64 },
    #[error("position {0} already replaced")]
    AlreadyReplaced(usize),
    #[error("substitution list is not sorted by position")]
    Unsorted,
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("input of length {len} exceeds the oracle limit {limit}")]
    TooLarge { len: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
