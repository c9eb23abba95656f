//! Minimum-distance estimation of `θ = (a, b, α, w, σ_ε, d)` from the lag
//! differences `γ̂(h) − γ̂(0)` of a log-volatility series, with the sandwich
//! covariance, the choice of the lag count and density confidence bands.
//!
//! ```
//! use calibration::{model_eta, ThetaVector};
//!
//! let theta = ThetaVector::new(vec![0.15], vec![-0.1], 0.3, 0.6, 0.5, 0.3).unwrap();
//! let eta = model_eta(&theta, 20).unwrap();
//! assert!(eta.iter().all(|v| *v < 0.0));
//! ```

pub mod asymptotic;
pub mod band;
pub mod error;
pub mod fit;
pub mod objective;
pub mod optim;
pub mod sigma2;
pub mod spectral;
pub mod split;
pub mod theta;

pub use asymptotic::{
    asymptotic_covariance, eta_jacobian, optimal_l, optimal_l_by, LagChoice, WeightingPolicy,
};
pub use band::{density_confidence_band, DensityBand};
pub use error::{CalibError, Result};
pub use fit::{
    de_fit, format_estimate, single_shot_fit, single_shot_from_eta, step_by_step_fit,
    step_by_step_from_eta, EstimationResult, FitOptions, StageReport, DEFAULT_LAGS,
};
pub use objective::{objective, sample_eta, Criterion, Weight};
pub use optim::{differential_evolution, nelder_mead, DeOptions, NelderMeadOptions, OptimResult};
pub use sigma2::{
    sigma2_from_acf, sigma2_from_density, sigma2_matrix, sigma2_on_grid, sigma2_with, Sigma2,
    Sigma2Form,
};
pub use spectral::{model_eta, EtaModel, SpectralGrid, SpectrumEvaluator};
pub use split::{split_at_peak, PeakSplit};
pub use theta::ThetaVector;
