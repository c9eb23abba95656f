//! Log-periodogram regression of Geweke and Porter-Hudak.

use crate::error::{Result, SemiparamError};
use crate::periodogram::periodogram;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct GphResult {
    pub d_gph: f64,
    pub se: f64,
    /// Number of Fourier frequencies in the regression.
    pub m: usize,
}

/// `⌊√T⌋`.
pub fn default_bandwidth(t: usize) -> usize {
    (t as f64).sqrt().floor() as usize
}

/// Slope of `ln I(λ_j)` on `x_j = −ln(4 sin²(λ_j/2))` over `j = 1..m`.
///
/// The regression errors are taken to have the log-exponential variance
/// `π²/6`, so `se = π / √(6 Σ (x_j − x̄)²)`. `m = None` uses [`default_bandwidth`].
pub fn gph_estimate(series: &[f64], m: Option<usize>) -> Result<GphResult> {
    let p = periodogram(series)?;
    let m = m.unwrap_or_else(|| default_bandwidth(series.len()));
    if m < 2 || m > p.value.len() {
        return Err(SemiparamError::InvalidArgument(format!(
            "bandwidth m = {m} outside [2, {}]",
            p.value.len()
        )));
    }
    if let Some(j) = p.value[..m].iter().position(|v| *v <= 0.0) {
        return Err(SemiparamError::Degenerate(format!(
            "periodogram vanishes at j = {}",
            j + 1
        )));
    }
    let x: Vec<f64> = p.lambda[..m]
        .iter()
        .map(|l| -(4.0 * (0.5 * l).sin().powi(2)).ln())
        .collect();
    let y: Vec<f64> = p.value[..m].iter().map(|v| v.ln()).collect();
    let n = m as f64;
    let (xm, ym) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxx: f64 = x.iter().map(|v| (v - xm).powi(2)).sum();
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - xm) * (b - ym)).sum();
    Ok(GphResult {
        d_gph: sxy / sxx,
        se: PI / (6.0 * sxx).sqrt(),
        m,
    })
}
