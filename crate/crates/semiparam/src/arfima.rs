//! Fractionally integrated noise `(1 − L)^{−d} ε` by FFT convolution.

use crate::error::{Result, SemiparamError};
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

/// MA weights `ψ_0..ψ_{n−1}` of `(1 − L)^{−d}`: `ψ_k = ψ_{k−1}(k − 1 + d)/k`.
pub fn fractional_weights(d: f64, n: usize) -> Vec<f64> {
    let mut psi = Vec::with_capacity(n);
    let mut p = 1.0;
    for k in 0..n {
        if k > 0 {
            p *= (k as f64 - 1.0 + d) / k as f64;
        }
        psi.push(p);
    }
    psi
}

/// `y_t = Σ_{k≤t} ψ_k ε_{t−k}` for every `t`, the linear convolution computed
/// on a zero-padded transform so no wrap-around occurs.
pub fn fractional_filter(eps: &[f64], d: f64) -> Result<Vec<f64>> {
    if !(d > -0.5 && d < 0.5) {
        return Err(SemiparamError::InvalidArgument(format!(
            "d = {d} outside (-1/2, 1/2)"
        )));
    }
    let n = eps.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let size = (2 * n).next_power_of_two();
    let mut planner = FftPlanner::new();
    let (fwd, inv) = (
        planner.plan_fft_forward(size),
        planner.plan_fft_inverse(size),
    );
    let pad = |v: &[f64]| {
        let mut b = vec![Complex64::new(0.0, 0.0); size];
        b.iter_mut().zip(v).for_each(|(c, &x)| c.re = x);
        b
    };
    let mut a = pad(&fractional_weights(d, n));
    let mut b = pad(eps);
    fwd.process(&mut a);
    fwd.process(&mut b);
    a.iter_mut().zip(&b).for_each(|(x, y)| *x *= y);
    inv.process(&mut a);
    Ok(a[..n].iter().map(|c| c.re / size as f64).collect())
}

/// The last `t` values of the filter applied to `eps`, whose first
/// `eps.len() − t` entries act as presample.
pub fn arfima_series(eps: &[f64], d: f64, t: usize) -> Result<Vec<f64>> {
    if t > eps.len() {
        return Err(SemiparamError::InvalidArgument(format!(
            "{} innovations for {t} outputs",
            eps.len()
        )));
    }
    let y = fractional_filter(eps, d)?;
    Ok(y[eps.len() - t..].to_vec())
}

/// Autocorrelation of ARFIMA(0, d, 0): `ρ(h) = Π_{k=1..h} (k − 1 + d)/(k − d)`.
pub fn arfima_acf(d: f64, max_lag: usize) -> Vec<f64> {
    let mut r = Vec::with_capacity(max_lag + 1);
    let mut p = 1.0;
    for h in 0..=max_lag {
        if h > 0 {
            p *= (h as f64 - 1.0 + d) / (h as f64 - d);
        }
        r.push(p);
    }
    r
}
