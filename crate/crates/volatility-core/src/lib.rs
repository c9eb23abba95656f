//! Daily realized variance from intraday prices, log-volatility series and
//! their sample statistics.
//!
//! ```
//! use volatility_core::{compute_realized_variance, IntradayDay};
//!
//! let day = IntradayDay::new("2024-01-02", vec![(0, 100.0), (60, 100.0 * 0.01f64.exp())]);
//! let rv = compute_realized_variance(&day).unwrap();
//! assert!((rv.rv - 1e-4).abs() < 1e-15);
//! ```

pub mod error;
pub mod kde;
pub mod realized;
pub mod stats;

pub use error::{Result, VolError};
pub use kde::{kde_density, silverman_bandwidth};
pub use realized::{
    build_rv_series, compute_realized_variance, compute_realized_variance_sampled, log_vol_series,
    rv_error_band, ErrorBand, IntradayDay, IntradaySeries, LogVolSeries, RVSeries, RealizedDay,
    RejectedDay,
};
pub use stats::{
    normality_diagnostics, sample_acf, sample_autocov, sample_autocov_fft, sample_moments,
    Normality, SampleMoments,
};
