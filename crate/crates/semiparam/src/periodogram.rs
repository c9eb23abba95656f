//! Periodogram at the Fourier frequencies.

use crate::error::{Result, SemiparamError};
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// Shortest series accepted by [`periodogram`].
pub const MIN_LENGTH: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct Periodogram {
    /// `λ_j = 2πj/T`, `j = 1..⌊(T−1)/2⌋`.
    pub lambda: Vec<f64>,
    pub value: Vec<f64>,
    pub t: usize,
}

/// `I(λ_j) = |Σ_t (x_t − x̄) e^{−iλ_j t}|² / (2πT)`.
pub fn periodogram(series: &[f64]) -> Result<Periodogram> {
    let t = series.len();
    if t < MIN_LENGTH {
        return Err(SemiparamError::TooShort(format!(
            "periodogram needs T >= {MIN_LENGTH}, got {t}"
        )));
    }
    if series.iter().any(|v| !v.is_finite()) {
        return Err(SemiparamError::InvalidArgument(
            "non-finite value in series".into(),
        ));
    }
    let mean = series.iter().sum::<f64>() / t as f64;
    let mut buf: Vec<Complex64> = series
        .iter()
        .map(|&v| Complex64::new(v - mean, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(t).process(&mut buf);
    let jmax = (t - 1) / 2;
    let norm = 1.0 / (2.0 * PI * t as f64);
    Ok(Periodogram {
        lambda: (1..=jmax).map(|j| 2.0 * PI * j as f64 / t as f64).collect(),
        value: buf[1..=jmax].iter().map(|c| c.norm_sqr() * norm).collect(),
        t,
    })
}
