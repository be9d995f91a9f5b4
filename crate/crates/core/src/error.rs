use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("partition {partition} has {len} parts, more than r = {r}")]
    TooManyParts { partition: String, len: usize, r: usize },
    #[error("size mismatch: |{0}| != |{1}|")]
    SizeMismatch(String, String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
