use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("system is not in adapted form: {0}")]
    NotAdapted(String),
    #[error("system is not its own flat model: {0}")]
    NotFlatModel(String),
    #[error("unsupported depth {0}: only 2-step symbols are supported")]
    UnsupportedDepth(usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("cost guard exceeded: {0}")]
    CostGuard(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
