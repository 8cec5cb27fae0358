use thiserror::Error;

/// Errors raised by validation, moves and the series engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("underflow: part magnitude would drop below 1")]
    Underflow,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid overpartition: {0}")]
    InvalidOverpartition(String),
    #[error("order exceeds marked count: p={p}, N={n}")]
    OrderExceedsMarked { p: usize, n: usize },
    #[error("backward move inadmissible: condition ({0}) fails")]
    BackwardInadmissible(char),
    #[error("not in {set}: {reason}")]
    NotInSet { set: &'static str, reason: String },
    #[error("not a class member: {0}")]
    NotInClass(String),
    #[error("series error: {0}")]
    Series(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal bound exceeded: {0}")]
    Bound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
