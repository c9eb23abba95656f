use hetero_distributions::DistError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProcessError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("model is not stationary: {0}")]
    NonStationary(String),
    #[error("spectral density is singular at lambda = {0}")]
    Singularity(f64),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error(transparent)]
    Distribution(#[from] DistError),
}

pub type Result<T> = std::result::Result<T, ProcessError>;
