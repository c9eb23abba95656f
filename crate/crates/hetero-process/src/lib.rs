//! The aggregate log-volatility process built from heterogeneous agents:
//! its transfer function and spectral density, MA(∞) coefficients,
//! autocovariances, and simulation of both the aggregate and a finite panel.
//!
//! ```
//! use hetero_distributions::{Coupling, Density};
//! use hetero_process::{acf_via_fft, ModelSpec};
//!
//! let density = Density::mixture(0.6, vec![0.15], vec![-0.1], 0.3).unwrap();
//! let model = ModelSpec::new(density, Coupling::Linear { alpha: 0.3 }, 1.0).unwrap();
//! let acf = acf_via_fft(&model, 1 << 12, 50).unwrap();
//! assert!(acf.rho[10] > acf.rho[20]);
//! ```

pub mod acf;
pub mod cauchy;
pub mod error;
pub mod kernels;
mod lsq;
pub mod ma;
pub mod model;
pub mod series;
pub mod simulate;
pub mod special;
pub mod transfer;

pub use acf::{acf_via_fft, acf_via_ma, tail_exponent, AcfMethod, ModelACF, TailFit};
pub use error::{ProcessError, Result};
pub use ma::{ma_coefficients, ma_coefficients_fast, MACoefficients, TailModel};
pub use model::ModelSpec;
pub use simulate::{
    simulate_aggregate, simulate_panel, AgentPanel, AggregateSimulation, PanelSimulation,
};
pub use transfer::{spectral_density, Transfer};
