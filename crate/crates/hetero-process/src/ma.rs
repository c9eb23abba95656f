//! MA(∞) coefficients of the aggregate: `Σ β̃_k z^k = N(z)/(1 − zD(z))`.

use crate::error::{ProcessError, Result};
use crate::lsq;
use crate::model::{exponent_set, ModelSpec};
use crate::series;
use crate::special::rgamma;
use hetero_distributions::{Coupling, MomentTable};
use num_complex::Complex64;

const TAIL_WINDOWS: [f64; 5] = [0.8, 1.2, 1.6, 2.0, 2.5];
const TAIL_TERMS: usize = 8;

/// Power-law model of `β̃_k` for large k: `Σ_e c_e s_e(k)` where `s_e(k)` is
/// the k-th coefficient of `(1−z)^e`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailModel {
    pub exponents: Vec<f64>,
    pub coeffs: Vec<f64>,
    /// Relative rms residual of the fit.
    pub residual: f64,
}

/// `s_e(k)` for k = 0..len.
fn binomial_coeffs(e: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut v = 1.0;
    for k in 0..len {
        if k > 0 {
            v *= (k as f64 - 1.0 - e) / k as f64;
        }
        out.push(v);
    }
    out
}

/// `Σ_{k ≥ s} k^p (k+h)^r` by Euler–Maclaurin on the binomially expanded integral.
fn power_pair_sum(p: f64, r: f64, s: f64, h: f64) -> f64 {
    let mut integral = 0.0;
    let mut binom = 1.0;
    for n in 0..40 {
        let e = p + r - n as f64 + 1.0;
        let t = binom * h.powi(n) * s.powf(e) / -e;
        integral += t;
        if t.abs() < 1e-18 * integral.abs() {
            break;
        }
        binom *= (r - n as f64) / (n as f64 + 1.0);
    }
    let g = |x: f64| x.powf(p) * (x + h).powf(r);
    let gp = g(s) * (p / s + r / (s + h));
    integral + 0.5 * g(s) - gp / 12.0
}

impl TailModel {
    /// Least-squares fit of the exponents on `k ∈ [K/4, K]`.
    pub fn fit(beta_tilde: &[f64], exponents: &[f64]) -> Option<Self> {
        let k = beta_tilde.len() - 1;
        if exponents.is_empty() || k < 64 {
            return None;
        }
        let basis: Vec<Vec<f64>> = exponents
            .iter()
            .map(|&e| binomial_coeffs(e, k + 1))
            .collect();
        let lead = exponents[0];
        let lo = (k / 4).max(16) as f64;
        let npts = 240;
        let mut rows = Vec::with_capacity(npts);
        let mut rhs = Vec::with_capacity(npts);
        for i in 0..npts {
            let kk = (lo * (k as f64 / lo).powf(i as f64 / (npts - 1) as f64)).round() as usize;
            let w = (kk as f64).powf(1.0 + lead);
            rows.push(basis.iter().map(|b| b[kk] * w).collect::<Vec<_>>());
            rhs.push(beta_tilde[kk] * w);
        }
        let coeffs = lsq::solve(&rows, &rhs, 1e-14)?;
        let mut ss = 0.0;
        let mut sy = 0.0;
        for (row, y) in rows.iter().zip(&rhs) {
            let fit: f64 = row.iter().zip(&coeffs).map(|(a, c)| a * c).sum();
            ss += (fit - y).powi(2);
            sy += y * y;
        }
        Some(Self {
            exponents: exponents.to_vec(),
            coeffs,
            residual: (ss / sy.max(1e-300)).sqrt(),
        })
    }

    /// Relative rms error of the model on `k ∈ [K/8, K/4)`, outside the fit range.
    pub fn holdout_error(&self, beta_tilde: &[f64]) -> f64 {
        let k = beta_tilde.len() - 1;
        let (lo, hi) = (k / 8, k / 4);
        if hi <= lo {
            return f64::INFINITY;
        }
        let lead = self.exponents[0];
        let pred = self.extend(lo, hi);
        let (mut ss, mut sy) = (0.0, 0.0);
        for (i, p) in pred.iter().enumerate() {
            let kk = lo + i;
            let w = (kk as f64).powf(1.0 + lead);
            ss += ((p - beta_tilde[kk]) * w).powi(2);
            sy += (beta_tilde[kk] * w).powi(2);
        }
        (ss / sy.max(1e-300)).sqrt()
    }

    /// Coefficients `β̃_k` for k in `from..to`, continued from the fitted model.
    pub fn extend(&self, from: usize, to: usize) -> Vec<f64> {
        let mut out = vec![0.0; to - from];
        for (&e, &c) in self.exponents.iter().zip(&self.coeffs) {
            // s_e(from) from the product formula, then the one-step ratio
            let mut v = binomial_coeffs(e, from + 1)[from];
            for (i, slot) in out.iter_mut().enumerate() {
                let kk = from + i;
                if i > 0 {
                    v *= (kk as f64 - 1.0 - e) / kk as f64;
                }
                *slot += c * v;
            }
        }
        out
    }

    /// `Σ_{k ≥ start} t(k) t(k+h)` from the large-k expansion
    /// `s_e(k) ≈ k^{−1−e}(1 + e(e+1)/(2k))/Γ(−e)`.
    pub fn remainder(&self, start: usize, h: usize) -> f64 {
        let mut terms = Vec::new();
        for (&e, &c) in self.exponents.iter().zip(&self.coeffs) {
            let a = c * rgamma(-e);
            terms.push((a, -1.0 - e));
            terms.push((a * e * (e + 1.0) / 2.0, -2.0 - e));
        }
        let (s, hf) = (start as f64, h as f64);
        let mut total = 0.0;
        for &(a, p) in &terms {
            for &(b, r) in &terms {
                total += a * b * power_pair_sum(p, r, s, hf);
            }
        }
        total
    }

    /// Estimate of `Σ_{k>K} β̃_k²`.
    pub fn square_tail(&self, k: usize) -> f64 {
        self.remainder(k + 1, 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MACoefficients {
    /// β̃₀..β̃_K
    pub beta_tilde: Vec<f64>,
    /// β₀..β_{K−1}
    pub beta: Vec<f64>,
    pub k: usize,
    pub tail: Option<TailModel>,
}

impl MACoefficients {
    /// `Σ_{k>K} β̃_k²`, from the tail model when present, else from a
    /// geometric or power-law fit to the last coefficients.
    pub fn truncation_bound(&self) -> f64 {
        if let Some(t) = &self.tail {
            return t.square_tail(self.k);
        }
        let b = &self.beta_tilde;
        let (k1, k2) = (self.k / 2, self.k);
        let (v1, v2) = (b[k1].abs(), b[k2].abs());
        if v2 == 0.0 {
            return 0.0;
        }
        if v1 > 0.0 && v2 < v1 {
            let slope = (v2 / v1).ln() / ((k2 as f64) / (k1 as f64)).ln();
            if slope < -0.5 {
                let p = 2.0 * slope;
                return v2 * v2 * k2 as f64 / (-p - 1.0);
            }
        }
        f64::INFINITY
    }

    /// `Σ β̃_k e^{−ikλ}`; with a tail model the part beyond K is added in
    /// closed form, `Σ_{k>K} s_e(k) z^k = (1−z)^e − Σ_{k≤K} s_e(k) z^k`.
    pub fn transfer(&self, lambda: f64) -> Complex64 {
        let z = Complex64::new(lambda.cos(), -lambda.sin());
        let horner = |c: &[f64]| {
            c.iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |s, &v| s * z + v)
        };
        let mut b = horner(&self.beta_tilde);
        if let Some(t) = &self.tail {
            let u = Complex64::new(0.0, 2.0 * (0.5 * lambda).sin())
                * Complex64::new((0.5 * lambda).cos(), -(0.5 * lambda).sin());
            for (&e, &c) in t.exponents.iter().zip(&t.coeffs) {
                b += c * (u.powf(e) - horner(&binomial_coeffs(e, self.k + 1)));
            }
        }
        b
    }

    /// Attach a fitted tail for the model's singular exponents.
    ///
    /// The expansion covers the algebraic singularity at `z = 1` only. A
    /// regular density part that does not vanish at ±1 adds logarithmic
    /// terms (`1/k`, `(−1)^k/k`) that the model does not represent.
    pub fn with_tail(mut self, model: &ModelSpec) -> Self {
        if let Some((base, gens)) = model.singular_structure() {
            // Wide windows resolve more terms but turn the basis nearly
            // collinear; keep the window whose fit best predicts [K/8, K/4].
            let mut best: Option<(f64, TailModel)> = None;
            let mut last_len = 0;
            for w in TAIL_WINDOWS {
                let mut exps = exponent_set(base, &gens, w, true);
                exps.truncate(TAIL_TERMS);
                if exps.len() == last_len {
                    continue;
                }
                last_len = exps.len();
                if let Some(t) = TailModel::fit(&self.beta_tilde, &exps) {
                    let err = t.holdout_error(&self.beta_tilde);
                    if best.as_ref().is_none_or(|(e, _)| err < *e) {
                        best = Some((err, t));
                    }
                }
            }
            self.tail = best.map(|(_, t)| t);
        }
        self
    }
}

fn moments(model: &ModelSpec, k: usize) -> Result<MomentTable> {
    Ok(MomentTable::build(&model.density, &model.coupling, k + 1)?)
}

fn check_growth(bt: &[f64]) -> Result<()> {
    let big = bt
        .iter()
        .skip(bt.len() / 2)
        .fold(0.0f64, |m, v| m.max(v.abs()));
    if bt.iter().any(|v| !v.is_finite()) || big > 1e6 {
        return Err(ProcessError::NonStationary(
            "MA coefficients grow: 1 − zD(z) vanishes inside the unit disk".into(),
        ));
    }
    Ok(())
}

/// Exact double recursion `β_k = P_k + Σ β_{i−1}P_{k−i}`,
/// `β̃_k = M_k + Σ β_{i−1}M_{k−i}` with `M_k = E[φ^k]`, `P_k = E[ψφ^k]`. O(K²).
pub fn ma_coefficients(model: &ModelSpec, k: usize) -> Result<MACoefficients> {
    let t = moments(model, k)?;
    let (m, p) = (&t.mphi, &t.mpsiphi);
    let mut beta = vec![0.0; k];
    for j in 0..k {
        let mut s = p[j];
        for i in 1..=j {
            s += beta[i - 1] * p[j - i];
        }
        beta[j] = s;
    }
    let beta_tilde = if model.coupling == Coupling::Rational {
        let mut e = vec![0.0; k + 1];
        e[0] = 1.0;
        e
    } else {
        (0..=k)
            .map(|j| {
                let mut s = m[j];
                for i in 1..=j {
                    s += beta[i - 1] * m[j - i];
                }
                s
            })
            .collect()
    };
    check_growth(&beta_tilde)?;
    Ok(MACoefficients {
        beta_tilde,
        beta,
        k,
        tail: None,
    })
}

/// Same coefficients as [`ma_coefficients`] from `β = P/(1−zP)`,
/// `β̃ = M/(1−zP)` with FFT series arithmetic. O(K log K).
pub fn ma_coefficients_fast(model: &ModelSpec, k: usize) -> Result<MACoefficients> {
    let t = moments(model, k)?;
    let mut q = vec![0.0; k + 1];
    q[0] = 1.0;
    for j in 1..=k {
        q[j] = -t.mpsiphi[j - 1];
    }
    let inv = series::inverse(&q, k + 1);
    let mut beta = series::multiply(&t.mpsiphi, &inv, k);
    beta.truncate(k);
    let beta_tilde = if model.coupling == Coupling::Rational {
        let mut e = vec![0.0; k + 1];
        e[0] = 1.0;
        e
    } else {
        series::multiply(&t.mphi, &inv, k + 1)
    };
    check_growth(&beta_tilde)?;
    Ok(MACoefficients {
        beta_tilde,
        beta,
        k,
        tail: None,
    })
}
