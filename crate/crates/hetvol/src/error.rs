//! Command errors and their exit codes.

use calibration::CalibError;
use hetero_distributions::DistError;
use hetero_process::ProcessError;
use semiparam::SemiparamError;
use thiserror::Error;
use volatility_core::VolError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("data: {0}")]
    Data(String),
    #[error("numerical: {0}")]
    Numerical(String),
}

impl CliError {
    /// 1 usage or config, 2 data, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

impl From<VolError> for CliError {
    fn from(e: VolError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<DistError> for CliError {
    fn from(e: DistError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<ProcessError> for CliError {
    fn from(e: ProcessError) -> Self {
        match e {
            ProcessError::Singularity(_) | ProcessError::Numerical(_) => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<SemiparamError> for CliError {
    fn from(e: SemiparamError) -> Self {
        match e {
            SemiparamError::InvalidArgument(_) => CliError::Config(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<CalibError> for CliError {
    fn from(e: CalibError) -> Self {
        match e {
            CalibError::Numerical(_)
            | CalibError::NotPositiveDefinite
            | CalibError::RankDeficient(_) => CliError::Numerical(e.to_string()),
            CalibError::Data(v) => v.into(),
            CalibError::Process(p) => p.into(),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Data(e.to_string())
    }
}
