use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid young function: {0}")]
    InvalidYoung(String),

    #[error("negative argument {0} passed to a young function")]
    NegativeArgument(f64),

    #[error("degenerate grid window: {0}")]
    DegenerateWindow(String),

    #[error("invalid measure space: {0}")]
    InvalidSpace(String),

    #[error("weight of atom {0} is not available (outside the table and no extrapolating tail)")]
    WeightUnavailable(i64),

    #[error("invalid transformation: {0}")]
    InvalidTransform(String),

    #[error("atom {0} escapes the materialized window")]
    WindowEscape(i64),

    #[error("empty atom set")]
    EmptySet,

    #[error("support of size {size} exceeds the oracle limit {limit}")]
    SupportTooLarge { size: usize, limit: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
