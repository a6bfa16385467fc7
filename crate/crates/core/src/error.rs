use thiserror::Error;

/// Errors raised across the library and the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument error: {0}")]
    Argument(String),
    #[error("scope error: {0}")]
    Scope(String),
    #[error("evaluation error: {0}")]
    Evaluation(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("data error: {0}")]
    Data(String),
    #[error("correctness failure: {0}")]
    Correctness(String),
}

pub type Result<T> = std::result::Result<T, Error>;
