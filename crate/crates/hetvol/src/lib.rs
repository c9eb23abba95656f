//! Log-volatility long memory generated by heterogeneous agents: realized
//! volatility, the aggregate model, minimum-distance estimation of the
//! agent distribution and semiparametric cross-checks, with the plumbing
//! behind the `hetvol` command-line tool.
//!
//! The component crates are re-exported.
//!
//! ```
//! use hetvol::calibration::{model_eta, ThetaVector};
//! use hetvol::hetero_process::simulate_aggregate;
//!
//! let theta = ThetaVector::new(vec![0.15], vec![-0.1], 0.3, 0.6, 0.5, 0.3).unwrap();
//! let sim = simulate_aggregate(&theta.model().unwrap(), 500, 0, 7).unwrap();
//! assert_eq!(sim.series.omega.len(), 500);
//! assert_eq!(model_eta(&theta, 10).unwrap().len(), 10);
//! ```

pub mod commands;
pub mod config;
pub mod csvio;
pub mod error;

pub use calibration;
pub use hetero_distributions;
pub use hetero_process;
pub use semiparam;
pub use volatility_core;

pub use config::RunConfig;
pub use csvio::{validate_csv, Schema, Table};
pub use error::{CliError, Result};
