//! Asymptotic covariance `Σ²_L` of `√T(η̂ − η)`.
//!
//! With `a_{kl}(s)` the combination of four shifted autocovariances,
//! `[Σ²]_{kl} = ½ Σ_{s∈ℤ} a_{kl}(s)²`. The sum converges like `s^{4d−3}`, so
//! the default path evaluates its spectral form `π∫_{−π}^{π} f²|P_{kl}|²`
//! with `P_{kl}` the transfer polynomial of the shifts, which has no
//! truncation. [`sigma2_from_acf`] is the direct truncated sum.

use crate::error::{CalibError, Result};
use crate::spectral::{SpectralGrid, SpectrumEvaluator};
use crate::theta::ThetaVector;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sigma2Form {
    /// `γ(s) − γ(s−k) − γ(s+l) + γ(s−k+l)`: the covariance of the sample
    /// differences `γ̂(k) − γ̂(0)`; `3σ⁴` on the diagonal for white noise.
    #[default]
    Bartlett,
    /// `γ(s) − γ(s−k) − γ(s−l) + γ(s−k+l)`; not symmetric in `(k, l)`.
    Shifted,
}

impl Sigma2Form {
    /// Shifts `(o, c)`: `a(s) = Σ c γ(s + o)`.
    fn shifts(self, k: i64, l: i64) -> [(i64, f64); 4] {
        match self {
            Sigma2Form::Bartlett => [(0, 1.0), (-k, -1.0), (l, -1.0), (l - k, 1.0)],
            Sigma2Form::Shifted => [(0, 1.0), (-k, -1.0), (-l, -1.0), (l - k, 1.0)],
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sigma2 {
    pub matrix: DMatrix<f64>,
    pub form: Sigma2Form,
    /// Largest eigenvalue magnitude removed by [`Sigma2::clip`].
    pub clipped: f64,
}

impl Sigma2 {
    pub fn lags(&self) -> usize {
        self.matrix.nrows()
    }

    /// Symmetrises and sets negative eigenvalues to zero, recording the
    /// largest clipped magnitude.
    pub fn clip(mut self) -> Self {
        let sym = 0.5 * (&self.matrix + self.matrix.transpose());
        let mut eig = SymmetricEigen::new(sym);
        let mut clipped = 0.0f64;
        for v in eig.eigenvalues.iter_mut() {
            if *v < 0.0 {
                clipped = clipped.max(-*v);
                *v = 0.0;
            }
        }
        self.matrix = eig.recompose();
        self.clipped = clipped;
        self
    }
}

/// `1 − e^{−imλ}` without cancellation.
fn one_minus(m: i64, lambda: f64) -> Complex64 {
    let half = 0.5 * m as f64 * lambda;
    // 2i sin(mλ/2) e^{−imλ/2}
    2.0 * half.sin() * Complex64::new(half.sin(), half.cos())
}

/// `Σ²_L(θ)` from the spectral density, PSD-clipped.
pub fn sigma2_matrix(theta: &ThetaVector, l: usize, form: Sigma2Form) -> Result<Sigma2> {
    sigma2_with(&SpectrumEvaluator::new(theta.q(), 2 * l), theta, l, form)
}

/// As [`sigma2_matrix`], on an evaluator built for frequencies up to `2L`.
pub fn sigma2_with(
    eval: &SpectrumEvaluator,
    theta: &ThetaVector,
    l: usize,
    form: Sigma2Form,
) -> Result<Sigma2> {
    let f = eval.spectrum(theta)?;
    sigma2_on_grid(&eval.grid, &f, l, form)
}

/// `Σ²_L` for an arbitrary spectral density on [0, π].
pub fn sigma2_from_density<F: Fn(f64) -> f64>(f: F, l: usize, form: Sigma2Form) -> Result<Sigma2> {
    let grid = SpectralGrid::new(2 * l);
    let v: Vec<f64> = grid.lambda.iter().map(|&x| f(x)).collect();
    sigma2_on_grid(&grid, &v, l, form)
}

/// `Σ²_L` from `f` sampled at the nodes of a grid resolving frequency `2L`.
pub fn sigma2_on_grid(g: &SpectralGrid, f: &[f64], l: usize, form: Sigma2Form) -> Result<Sigma2> {
    if l == 0 {
        return Err(CalibError::InvalidArgument(
            "Σ² needs at least one lag".into(),
        ));
    }
    if f.len() != g.len() {
        return Err(CalibError::InvalidArgument(format!(
            "{} density values for {} nodes",
            f.len(),
            g.len()
        )));
    }
    if let Some(v) = f.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(CalibError::Numerical(format!("spectral density value {v}")));
    }
    let m = match form {
        Sigma2Form::Bartlett => {
            // Σ²_{kl} = 32π ∫_0^π f² sin²(kλ/2) sin²(lλ/2)
            let mut s = DMatrix::<f64>::zeros(l, g.len());
            for (j, (&lam, &w)) in g.lambda.iter().zip(&g.weight).enumerate() {
                let v = (32.0 * PI * w).sqrt() * f[j];
                for k in 1..=l {
                    let sk = (0.5 * k as f64 * lam).sin();
                    s[(k - 1, j)] = v * sk * sk;
                }
            }
            &s * s.transpose()
        }
        Sigma2Form::Shifted => {
            // P = (1 − e^{−ikλ}) − e^{−ilλ}(1 − e^{−i(k−2l)λ}); Σ² = 2π∫_0^π f²|P|²
            let mut out = DMatrix::<f64>::zeros(l, l);
            for (j, (&lam, &w)) in g.lambda.iter().zip(&g.weight).enumerate() {
                let v = 2.0 * PI * w * f[j] * f[j];
                for k in 1..=l as i64 {
                    let ek = one_minus(k, lam);
                    for ll in 1..=l as i64 {
                        let p = ek
                            - Complex64::from_polar(1.0, -(ll as f64) * lam)
                                * one_minus(k - 2 * ll, lam);
                        out[(k as usize - 1, ll as usize - 1)] += v * p.norm_sqr();
                    }
                }
            }
            out
        }
    };
    let s = Sigma2 {
        matrix: m,
        form,
        clipped: 0.0,
    };
    Ok(if form == Sigma2Form::Bartlett {
        s.clip()
    } else {
        s
    })
}

/// Direct truncated sum `½ Σ_{|s|≤S} a_{kl}(s)²` from autocovariances
/// `γ(0..=S+L)`, with `S = gamma.len() − 1 − L`.
pub fn sigma2_from_acf(gamma: &[f64], l: usize, form: Sigma2Form) -> Result<Sigma2> {
    if gamma.len() < 2 * l + 2 {
        return Err(CalibError::InvalidArgument(format!(
            "{} autocovariances for {l} lags",
            gamma.len()
        )));
    }
    let s_max = (gamma.len() - 1 - l) as i64;
    let g = |s: i64| gamma[s.unsigned_abs() as usize];
    let mut m = DMatrix::<f64>::zeros(l, l);
    for k in 1..=l as i64 {
        for ll in 1..=l as i64 {
            let sh = form.shifts(k, ll);
            let mut acc = 0.0;
            for s in -s_max..=s_max {
                let a: f64 = sh.iter().map(|&(o, c)| c * g(s + o)).sum();
                acc += a * a;
            }
            m[(k as usize - 1, ll as usize - 1)] = 0.5 * acc;
        }
    }
    Ok(Sigma2 {
        matrix: m,
        form,
        clipped: 0.0,
    })
}
