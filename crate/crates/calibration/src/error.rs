use hetero_distributions::DistError;
use hetero_process::ProcessError;
use thiserror::Error;
use volatility_core::VolError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalibError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// θ outside the admissible set.
    #[error("parameter outside the admissible set: {0}")]
    Domain(String),
    #[error("weight matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("G'WG is singular; flat direction dominated by {0}")]
    RankDeficient(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error(transparent)]
    Process(#[from] ProcessError),
    #[error(transparent)]
    Distribution(#[from] DistError),
    #[error(transparent)]
    Data(#[from] VolError),
}

pub type Result<T> = std::result::Result<T, CalibError>;
