use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VolError {
    #[error("day {date} rejected: {reason}")]
    DayRejected { date: String, reason: String },
    #[error("non-positive price {price} on {date}")]
    NonPositivePrice { date: String, price: f64 },
    #[error("zero realized variance on {0}")]
    ZeroVariance(String),
    #[error("degenerate series: {0}")]
    Degenerate(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, VolError>;
