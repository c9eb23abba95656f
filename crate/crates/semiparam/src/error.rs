use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SemiparamError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series too short: {0}")]
    TooShort(String),
    #[error("degenerate series: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, SemiparamError>;
