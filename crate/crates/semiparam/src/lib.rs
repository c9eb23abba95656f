//! Semiparametric estimators of the memory parameter `d`: log-periodogram
//! regression and rescaled-range analysis, plus a fractional-noise generator
//! for checking them.
//!
//! ```
//! use semiparam::{gph_estimate, rs_hurst};
//!
//! let x: Vec<f64> = (0..1024).map(|i| ((i * 7919) % 1000) as f64 / 1000.0).collect();
//! let g = gph_estimate(&x, None).unwrap();
//! assert_eq!(g.m, 32);
//! assert!(rs_hurst(&x, None).unwrap().h > 0.0);
//! ```

pub mod arfima;
pub mod error;
pub mod gph;
pub mod hurst;
pub mod periodogram;

pub use arfima::{arfima_acf, arfima_series, fractional_filter, fractional_weights};
pub use error::{Result, SemiparamError};
pub use gph::{default_bandwidth, gph_estimate, GphResult};
pub use hurst::{default_blocks, rs_hurst, HurstResult};
pub use periodogram::{periodogram, Periodogram};
