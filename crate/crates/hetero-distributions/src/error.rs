use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DistError {
    #[error("point {0} lies outside [-1, 1]")]
    OutOfSupport(f64),
    #[error("density diverges at x = {0}")]
    AtSingularity(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, DistError>;
