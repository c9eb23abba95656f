use crate::error::{DistError, Result};
use crate::fourier::FourierDensity;
use crate::quad::WeightedRule;
use statrs::function::beta::{beta_reg, ln_beta};
use statrs::function::erf::erf;
use std::f64::consts::{PI, SQRT_2};

/// Singular Beta(2, 1-d) part `f₂(x) = (1-d)(2-d) x (1-x)^{-d}` on [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularBeta {
    pub d: f64,
}

impl SingularBeta {
    pub fn new(d: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&d) {
            return Err(DistError::InvalidParameter(format!(
                "d = {d} must lie in [0, 1)"
            )));
        }
        Ok(Self { d })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let d = self.d;
        if x <= 0.0 {
            return Ok(0.0);
        }
        if x >= 1.0 {
            return if d > 0.0 {
                Err(DistError::AtSingularity(x))
            } else {
                Ok(2.0)
            };
        }
        Ok((1.0 - d) * (2.0 - d) * x * (1.0 - x).powf(-d))
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let d = self.d;
        if x <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        let u = 1.0 - x;
        1.0 - (2.0 - d) * u.powf(1.0 - d) + (1.0 - d) * u.powf(2.0 - d)
    }

    /// `E₂[φ^k] = Γ(k+2)Γ(3-d)/Γ(k+3-d)`, built by `m_k = m_{k-1}(k+1)/(k+2-d)`.
    pub fn moments(&self, kmax: usize) -> Vec<f64> {
        let mut m = Vec::with_capacity(kmax + 1);
        let mut v = 1.0;
        m.push(v);
        for k in 1..=kmax {
            v *= (k as f64 + 1.0) / (k as f64 + 2.0 - self.d);
            m.push(v);
        }
        m
    }
}

/// `f = w f₁ + (1-w) f₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureDensity {
    pub w: f64,
    pub regular: FourierDensity,
    pub singular: SingularBeta,
}

impl MixtureDensity {
    pub fn new(w: f64, regular: FourierDensity, singular: SingularBeta) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) {
            return Err(DistError::InvalidParameter(format!(
                "w = {w} must lie in [0, 1]"
            )));
        }
        Ok(Self {
            w,
            regular,
            singular,
        })
    }
}

/// Parametric families on [-1, 1] (or [0, 1]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParametricDensity {
    /// Beta(-α, 1+α) on [0, 1], density ∝ φ^{-α-1}(1-φ)^α, α ∈ (-½, 0).
    BetaNegAlpha { alpha: f64 },
    /// Beta(p, q) stretched to [-1, 1]: `(1+x)^{p-1}(1-x)^{q-1} / (2^{p+q-1} B(p,q))`.
    StretchedBeta { p: f64, q: f64 },
    /// `w ·` stretched Beta(p, q) `+ (1-w) (1+x)(1-x) e^{-(x-m)²/2σ²} / K(m,σ)`.
    BellMixture {
        p: f64,
        q: f64,
        w: f64,
        m: f64,
        sigma: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Density {
    Fourier(FourierDensity),
    Singular(SingularBeta),
    Mixture(MixtureDensity),
    Parametric(ParametricDensity),
    /// Degenerate law φ ≡ `at`.
    PointMass {
        at: f64,
    },
}

impl Density {
    pub fn mixture(w: f64, a: Vec<f64>, b: Vec<f64>, d: f64) -> Result<Self> {
        Ok(Density::Mixture(MixtureDensity::new(
            w,
            FourierDensity::new(a, b)?,
            SingularBeta::new(d)?,
        )?))
    }

    pub fn beta_neg_alpha(alpha: f64) -> Self {
        Density::Parametric(ParametricDensity::BetaNegAlpha { alpha })
    }

    pub fn stretched_beta(p: f64, q: f64) -> Self {
        Density::Parametric(ParametricDensity::StretchedBeta { p, q })
    }

    /// Checks the parameter constraints each family needs to be a density.
    pub fn check_parameters(&self) -> Result<()> {
        let bad = |s: String| Err(DistError::InvalidParameter(s));
        match self {
            Density::Fourier(_) => Ok(()),
            Density::Singular(s) => SingularBeta::new(s.d).map(|_| ()),
            Density::Mixture(m) => {
                SingularBeta::new(m.singular.d)?;
                MixtureDensity::new(m.w, m.regular.clone(), m.singular).map(|_| ())
            }
            Density::PointMass { at } => {
                if (-1.0..=1.0).contains(at) {
                    Ok(())
                } else {
                    bad(format!("point mass at {at} outside [-1, 1]"))
                }
            }
            Density::Parametric(p) => match *p {
                ParametricDensity::BetaNegAlpha { alpha } => {
                    if alpha > -1.0 && alpha < 0.0 {
                        Ok(())
                    } else {
                        bad(format!("Beta(-α, 1+α) needs α in (-1, 0), got {alpha}"))
                    }
                }
                ParametricDensity::StretchedBeta { p, q } => stretched_ok(p, q),
                ParametricDensity::BellMixture { p, q, w, m, sigma } => {
                    stretched_ok(p, q)?;
                    if !(0.0..=1.0).contains(&w) {
                        return bad(format!("bell weight w = {w} outside [0, 1]"));
                    }
                    if !(m > -1.0 && m < 1.0) {
                        return bad(format!("bell centre m = {m} outside (-1, 1)"));
                    }
                    if !(sigma > 0.0 && sigma.is_finite()) {
                        return bad(format!("bell width sigma = {sigma} must be positive"));
                    }
                    Ok(())
                }
            },
        }
    }

    /// Exponent `e` of the behaviour `(1-x)^e` of the density at x = 1.
    pub fn exponent_at_one(&self) -> f64 {
        match self {
            Density::Fourier(_) | Density::PointMass { .. } => 0.0,
            Density::Singular(s) => -s.d,
            Density::Mixture(m) => {
                if m.w < 1.0 {
                    -m.singular.d
                } else {
                    0.0
                }
            }
            Density::Parametric(p) => match *p {
                ParametricDensity::BetaNegAlpha { alpha } => alpha,
                ParametricDensity::StretchedBeta { q, .. } => q - 1.0,
                ParametricDensity::BellMixture { q, w, .. } => {
                    if w > 0.0 {
                        q - 1.0
                    } else {
                        1.0
                    }
                }
            },
        }
    }
}

fn stretched_ok(p: f64, q: f64) -> Result<()> {
    if p > 1.0 && q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(DistError::InvalidParameter(format!(
            "stretched Beta needs p > 1 and 0 < q < 1, got p = {p}, q = {q}"
        )))
    }
}

pub(crate) fn stretched_beta_pdf(p: f64, q: f64, x: f64) -> Result<f64> {
    if x >= 1.0 && q < 1.0 {
        return Err(DistError::AtSingularity(x));
    }
    if x <= -1.0 && p < 1.0 {
        return Err(DistError::AtSingularity(x));
    }
    let ln_norm = (p + q - 1.0) * 2f64.ln() + ln_beta(p, q);
    let v = (p - 1.0) * (1.0 + x).ln() + (q - 1.0) * (1.0 - x).ln() - ln_norm;
    Ok(v.exp())
}

/// `∫_{-1}^{x} (1-t²) e^{-(t-m)²/2σ²} dt`, closed form via erf.
pub fn bell_partial_integral(m: f64, sigma: f64, x: f64) -> f64 {
    let u0 = (-1.0 - m) / sigma;
    let u1 = (x - m) / sigma;
    let g0 = (-0.5 * u0 * u0).exp();
    let g1 = (-0.5 * u1 * u1).exp();
    let s0 = (PI / 2.0).sqrt() * (erf(u1 / SQRT_2) - erf(u0 / SQRT_2));
    let s1 = g0 - g1;
    let s2 = s0 + u0 * g0 - u1 * g1;
    sigma * ((1.0 - m * m) * s0 - 2.0 * m * sigma * s1 - sigma * sigma * s2)
}

/// Normaliser K(m, σ) of the bell component.
pub fn bell_normalizer(m: f64, sigma: f64) -> f64 {
    bell_partial_integral(m, sigma, 1.0)
}

pub(crate) fn bell_pdf(m: f64, sigma: f64, x: f64) -> f64 {
    let z = (x - m) / sigma;
    (1.0 + x) * (1.0 - x) * (-0.5 * z * z).exp() / bell_normalizer(m, sigma)
}

/// Pointwise density value.
///
/// Returns [`DistError::AtSingularity`] where the density diverges
/// (for instance x = 1 for a singular part with d > 0).
pub fn density_eval(density: &Density, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) || x.is_nan() {
        return Err(DistError::OutOfSupport(x));
    }
    density.check_parameters()?;
    match density {
        Density::Fourier(f) => Ok(f.eval(x)),
        Density::Singular(s) => s.eval(x),
        Density::Mixture(m) => {
            let f2 = if m.w < 1.0 { m.singular.eval(x)? } else { 0.0 };
            Ok(m.w * m.regular.eval(x) + (1.0 - m.w) * f2)
        }
        Density::PointMass { at } => {
            if x == *at {
                Err(DistError::AtSingularity(x))
            } else {
                Ok(0.0)
            }
        }
        Density::Parametric(p) => match *p {
            ParametricDensity::BetaNegAlpha { alpha } => {
                if x < 0.0 {
                    return Ok(0.0);
                }
                if x == 0.0 || x == 1.0 {
                    return Err(DistError::AtSingularity(x));
                }
                let ln_b = ln_beta(-alpha, 1.0 + alpha);
                Ok(((-alpha - 1.0) * x.ln() + alpha * (1.0 - x).ln() - ln_b).exp())
            }
            ParametricDensity::StretchedBeta { p, q } => stretched_beta_pdf(p, q, x),
            ParametricDensity::BellMixture { p, q, w, m, sigma } => {
                let beta = if w > 0.0 {
                    stretched_beta_pdf(p, q, x)?
                } else {
                    0.0
                };
                Ok(w * beta + (1.0 - w) * bell_pdf(m, sigma, x))
            }
        },
    }
}

/// Cumulative distribution function `P(φ ≤ x)`.
pub fn density_cdf(density: &Density, x: f64) -> f64 {
    let x = x.clamp(-1.0, 1.0);
    match density {
        Density::Fourier(f) => f.cdf(x),
        Density::Singular(s) => s.cdf(x),
        Density::Mixture(m) => m.w * m.regular.cdf(x) + (1.0 - m.w) * m.singular.cdf(x),
        Density::PointMass { at } => {
            if x >= *at {
                1.0
            } else {
                0.0
            }
        }
        Density::Parametric(p) => match *p {
            ParametricDensity::BetaNegAlpha { alpha } => {
                if x <= 0.0 {
                    0.0
                } else {
                    beta_reg(-alpha, 1.0 + alpha, x)
                }
            }
            ParametricDensity::StretchedBeta { p, q } => beta_reg(p, q, 0.5 * (x + 1.0)),
            ParametricDensity::BellMixture { p, q, w, m, sigma } => {
                w * beta_reg(p, q, 0.5 * (x + 1.0))
                    + (1.0 - w) * bell_partial_integral(m, sigma, x) / bell_normalizer(m, sigma)
            }
        },
    }
}

/// `E[φ^k]` for k = 0..=kmax.
pub fn moments_phi(density: &Density, kmax: usize) -> Result<Vec<f64>> {
    density.check_parameters()?;
    Ok(match density {
        Density::Fourier(f) => f.moments(kmax),
        Density::Singular(s) => s.moments(kmax),
        Density::Mixture(m) => {
            let mut out = vec![0.0; kmax + 1];
            if m.w > 0.0 {
                for (o, v) in out.iter_mut().zip(m.regular.moments(kmax)) {
                    *o += m.w * v;
                }
            }
            if m.w < 1.0 {
                for (o, v) in out.iter_mut().zip(m.singular.moments(kmax)) {
                    *o += (1.0 - m.w) * v;
                }
            }
            out
        }
        Density::PointMass { at } => {
            let mut out = Vec::with_capacity(kmax + 1);
            let mut v = 1.0;
            for _ in 0..=kmax {
                out.push(v);
                v *= at;
            }
            out
        }
        Density::Parametric(p) => match *p {
            ParametricDensity::BetaNegAlpha { alpha } => beta_neg_alpha_moments(alpha, kmax),
            ParametricDensity::StretchedBeta { p, q } => stretched_beta_moments(p, q, kmax),
            ParametricDensity::BellMixture { p, q, w, m, sigma } => {
                let sb = stretched_beta_moments(p, q, kmax);
                let bell = bell_moments(m, sigma, kmax);
                sb.iter()
                    .zip(&bell)
                    .map(|(s, b)| w * s + (1.0 - w) * b)
                    .collect()
            }
        },
    })
}

/// Single moment `E[φ^k]`.
pub fn moment_phi(density: &Density, k: usize) -> Result<f64> {
    Ok(moments_phi(density, k)?[k])
}

fn beta_neg_alpha_moments(alpha: f64, kmax: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    let mut v = 1.0;
    out.push(v);
    for k in 1..=kmax {
        let k = k as f64;
        v *= (k - 1.0 - alpha) / k;
        out.push(v);
    }
    out
}

/// Moments of the stretched Beta(p, q) by the three-term recursion
/// `m_{k+1} = (k m_{k-1} + (p-q) m_k) / (k+p+q)`.
pub(crate) fn stretched_beta_moments(p: f64, q: f64, kmax: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(1.0);
    if kmax == 0 {
        return out;
    }
    out.push((p - q) / (p + q));
    for k in 1..kmax {
        let kf = k as f64;
        let next = (kf * out[k - 1] + (p - q) * out[k]) / (kf + p + q);
        out.push(next);
    }
    out
}

pub(crate) fn bell_moments(m: f64, sigma: f64, kmax: usize) -> Vec<f64> {
    let width = (0.25 * sigma).min(0.125);
    let rule = WeightedRule::endpoint(-1.0, 1.0, 1.0, 1.0, width);
    let k = bell_normalizer(m, sigma);
    rule.power_moments(|x| (-0.5 * ((x - m) / sigma).powi(2)).exp() / k, kmax)
}
