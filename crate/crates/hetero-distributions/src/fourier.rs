//! Regular Fourier part `f₁(x) = ½ + Σ aₙ cos(nπx) + Σ bₙ sin(nπx)` on [-1, 1].

use crate::error::{DistError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Number of points of the uniform grid used to check `f₁ ≥ 0`.
pub const POSITIVITY_GRID: usize = 2001;

/// Grid values above `-POSITIVITY_FLOOR` count as nonnegative, so a density
/// that vanishes exactly at ±1 survives rounding.
pub const POSITIVITY_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FourierDensity {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl FourierDensity {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(DistError::InvalidParameter(format!(
                "cosine and sine coefficient lists differ in length ({} vs {})",
                a.len(),
                b.len()
            )));
        }
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(DistError::InvalidParameter(
                "non-finite Fourier coefficient".into(),
            ));
        }
        Ok(Self { a, b })
    }

    /// The uniform density ½ on [-1, 1].
    pub fn uniform() -> Self {
        Self {
            a: vec![],
            b: vec![],
        }
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut v = 0.5;
        for (n, (&an, &bn)) in self.a.iter().zip(&self.b).enumerate() {
            let t = (n as f64 + 1.0) * PI * x;
            v += an * t.cos() + bn * t.sin();
        }
        v
    }

    /// `∫_{-1}^x f₁`.
    pub fn cdf(&self, x: f64) -> f64 {
        let mut v = 0.5 * (x + 1.0);
        for (n, (&an, &bn)) in self.a.iter().zip(&self.b).enumerate() {
            let k = (n as f64 + 1.0) * PI;
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            v += an * (k * x).sin() / k + bn * (sign - (k * x).cos()) / k;
        }
        v
    }

    /// Minimum of `f₁` over the positivity grid.
    pub fn grid_min(&self) -> f64 {
        (0..POSITIVITY_GRID)
            .map(|i| self.eval(-1.0 + 2.0 * i as f64 / (POSITIVITY_GRID - 1) as f64))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.grid_min() >= -POSITIVITY_FLOOR
    }

    /// `E₁[φ^k]` for k = 0..=kmax.
    ///
    /// Uses `½A_k + Σ aₙB_{n,k} + bₙC_{n,k}` where the cosine and sine moments
    /// come from `J_k = ∫_0^1 x^k e^{inπx} dx`: `B = (1+(-1)^k) Re J`,
    /// `C = (1-(-1)^k) Im J`.
    pub fn moments(&self, kmax: usize) -> Vec<f64> {
        let mut m: Vec<f64> = (0..=kmax)
            .map(|k| {
                if k % 2 == 0 {
                    1.0 / (k as f64 + 1.0)
                } else {
                    0.0
                }
            })
            .collect();
        for (n, (&an, &bn)) in self.a.iter().zip(&self.b).enumerate() {
            if an == 0.0 && bn == 0.0 {
                continue;
            }
            let j = half_line_exp_moments((n as f64 + 1.0) * PI, kmax);
            for (k, jk) in j.iter().enumerate() {
                if k % 2 == 0 {
                    m[k] += an * 2.0 * jk.re;
                } else {
                    m[k] += bn * 2.0 * jk.im;
                }
            }
        }
        m
    }
}

/// `J_k = ∫_0^1 x^k e^{iax} dx` for k = 0..=kmax.
///
/// The one-step recursion `ia J_k = e^{ia} - k J_{k-1}` amplifies errors by
/// `k/a`, so it runs upward only while `k ≤ a`. Above that it runs downward,
/// `J_{k-1} = (e^{ia} - ia J_k)/k`, from a top index seeded by the convergent
/// series `J_k = e^{ia} Σ_j (-ia)^j / ((k+1)…(k+1+j))`.
pub fn half_line_exp_moments(a: f64, kmax: usize) -> Vec<Complex64> {
    let e = Complex64::new(a.cos(), a.sin());
    let ia = Complex64::new(0.0, a);
    let mut out = vec![Complex64::new(0.0, 0.0); kmax + 1];
    let k_up = (a.floor() as usize).min(kmax);

    out[0] = (e - 1.0) / ia;
    for k in 1..=k_up {
        out[k] = (e - (k as f64) * out[k - 1]) / ia;
    }
    if k_up == kmax {
        return out;
    }

    let top = kmax.max((2.0 * a).ceil() as usize + 20);
    let mut jk = series_seed(a, top);
    if top <= kmax {
        out[top] = jk;
    }
    let mut k = top;
    while k > k_up + 1 {
        jk = (e - ia * jk) / k as f64;
        k -= 1;
        if k <= kmax {
            out[k] = jk;
        }
    }
    out
}

fn series_seed(a: f64, k: usize) -> Complex64 {
    let e = Complex64::new(a.cos(), a.sin());
    let mia = Complex64::new(0.0, -a);
    let mut term = Complex64::new(1.0 / (k as f64 + 1.0), 0.0);
    let mut sum = term;
    for j in 1..400 {
        term *= mia / (k as f64 + 1.0 + j as f64);
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    e * sum
}
