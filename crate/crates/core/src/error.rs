use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("level buffer is empty")]
    EmptyBuffer,
}

impl CoreError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        CoreError::Parse { line, column, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, CoreError>;
