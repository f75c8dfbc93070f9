use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid join index: {0}")]
    InvalidJoinIndex(String),
    #[error("invalid leaf sequence: {0}")]
    InvalidSequence(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("invalid shift subset: {0}")]
    InvalidSubset(String),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("decode error at {path}: {msg}")]
    Decode { path: String, msg: String },
    #[error("not an edge pair: {0}")]
    NotAnEdgePair(String),
    #[error("missing data: {0}")]
    Missing(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
