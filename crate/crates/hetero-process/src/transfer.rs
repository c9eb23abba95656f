//! `B(z) = N(z)/(1 − zD(z))` on the unit circle and the spectral density
//! `f_X(λ) = (E[c]² σ_ε²/2π) |B(e^{−iλ})|²`.

use crate::cauchy::UnitPoint;
use crate::error::{ProcessError, Result};
use crate::kernels::{NKernel, StretchedKernel};
use crate::ma::ma_coefficients_fast;
use crate::model::{supports_power_law_closed_form, ModelSpec, MEAN_C};
use crate::special::hypergeometric_2f1;
use hetero_distributions::{Coupling, Density, ParametricDensity};
use num_complex::Complex64;
use rustfft::FftPlanner;
use statrs::function::beta::ln_beta;
use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;

/// Truncation of the MA fallback used when no closed form of `D` exists.
pub const SERIES_FALLBACK_K: usize = 1 << 16;

#[derive(Debug, Clone)]
enum Den {
    One,
    Linear(f64),
    Affine(f64, f64),
    /// `K ₂F₁(1, −α; 1+β; z)`
    BetaPower {
        k: f64,
        alpha: f64,
        beta: f64,
    },
    /// `scale · N_{p, q+β}(z)`
    StretchedPower {
        scale: f64,
        kern: StretchedKernel,
    },
    /// `(1−a)^β / (1 − za)`
    PointPower {
        at: f64,
        c: f64,
    },
    /// truncated `Σ β̃_k z^k`
    Series(Vec<f64>),
}

/// Evaluator of `B(e^{−iλ})` for one model.
#[derive(Debug, Clone)]
pub struct Transfer {
    n: NKernel,
    den: Den,
    /// `E[c]² σ_ε² / 2π`
    scale: f64,
    long_memory: bool,
    /// `D(1)` for the power-law coupling, when available.
    d_at_one: Option<f64>,
}

impl Transfer {
    pub fn new(model: &ModelSpec) -> Result<Self> {
        let scale = MEAN_C * MEAN_C * model.sigma_eps * model.sigma_eps / (2.0 * PI);
        let n = NKernel::new(&model.density);
        let mut d_at_one = None;
        let den = match model.coupling {
            Coupling::Rational => Den::One,
            Coupling::Linear { alpha } => Den::Linear(alpha),
            Coupling::Affine { alpha, phibar } => Den::Affine(alpha, phibar),
            Coupling::PowerLaw { beta } if supports_power_law_closed_form(&model.density) => {
                match model.density {
                    Density::Parametric(ParametricDensity::BetaNegAlpha { alpha }) => {
                        let k = (ln_gamma(1.0 + alpha + beta)
                            - ln_gamma(1.0 + alpha)
                            - ln_gamma(1.0 + beta))
                        .exp();
                        d_at_one = Some(if beta + alpha > 0.0 {
                            k * beta / (beta + alpha)
                        } else {
                            f64::INFINITY
                        });
                        Den::BetaPower { k, alpha, beta }
                    }
                    Density::Parametric(ParametricDensity::StretchedBeta { p, q }) => {
                        let s = (beta * 2f64.ln() + ln_beta(p, q + beta) - ln_beta(p, q)).exp();
                        let q2 = q + beta;
                        d_at_one = Some(if q2 > 1.0 {
                            s * (p + q2 - 1.0) / (2.0 * (q2 - 1.0))
                        } else {
                            f64::INFINITY
                        });
                        Den::StretchedPower {
                            scale: s,
                            kern: StretchedKernel::new(p, q2),
                        }
                    }
                    Density::PointMass { at } => {
                        d_at_one = Some(if at < 1.0 {
                            (1.0 - at).powf(beta - 1.0)
                        } else {
                            f64::INFINITY
                        });
                        Den::PointPower {
                            at,
                            c: (1.0 - at).powf(beta),
                        }
                    }
                    _ => unreachable!(),
                }
            }
            Coupling::PowerLaw { .. } => {
                let ma = ma_coefficients_fast(model, SERIES_FALLBACK_K)?;
                Den::Series(ma.beta_tilde)
            }
        };
        Ok(Self {
            n,
            den,
            scale,
            long_memory: model.is_long_memory(),
            d_at_one,
        })
    }

    /// Whether `1 − zD(z)` stays away from zero in the closed unit disk, so
    /// that the MA(∞) representation exists. Always true except for the
    /// power-law coupling with `D(1) ≥ 1`.
    pub fn invertible(&self) -> bool {
        self.d_at_one.is_none_or(|d| d < 1.0)
    }

    pub fn d_at_one(&self) -> Option<f64> {
        self.d_at_one
    }

    pub fn is_long_memory(&self) -> bool {
        self.long_memory
    }

    /// `N(e^{−iλ})`.
    pub fn n(&self, lambda: f64) -> Complex64 {
        self.n.eval(&UnitPoint::new(fold(lambda)))
    }

    /// `B(e^{−iλ})` for λ in (0, π].
    pub fn b_point(&self, pt: &UnitPoint) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        Ok(match &self.den {
            Den::One => one,
            Den::Series(bt) => {
                let mut s = Complex64::new(0.0, 0.0);
                for &c in bt.iter().rev() {
                    s = s * pt.z + c;
                }
                s
            }
            Den::Linear(alpha) => {
                let n = self.n.eval(pt);
                n / ((1.0 - alpha) + *alpha * pt.u * n)
            }
            Den::Affine(alpha, phibar) => {
                let n = self.n.eval(pt);
                n / ((1.0 - alpha) + (*alpha - *phibar * pt.z) * n)
            }
            Den::BetaPower { k, alpha, beta } => {
                let n = self.n.eval(pt);
                let d = *k * hypergeometric_2f1(1.0, -alpha, 1.0 + beta, pt.z)?;
                n / (one - pt.z * d)
            }
            Den::StretchedPower { scale, kern } => {
                let n = self.n.eval(pt);
                n / (one - pt.z * *scale * kern.n(pt))
            }
            Den::PointPower { at, c } => {
                let n = self.n.eval(pt);
                n / (one - pt.z * *c / (one - pt.z * *at))
            }
        })
    }

    pub fn b(&self, lambda: f64) -> Result<Complex64> {
        let l = fold(lambda);
        let b = self.b_point(&UnitPoint::new(l))?;
        // B(e^{iλ}) is the conjugate of B(e^{−iλ})
        Ok(if lambda.rem_euclid(2.0 * PI) > PI {
            b.conj()
        } else {
            b
        })
    }

    /// `f_X(λ)`; λ is reduced to [0, π] by symmetry.
    pub fn f(&self, lambda: f64) -> Result<f64> {
        let l = fold(lambda);
        if l == 0.0 {
            return self.f_at_zero();
        }
        Ok(self.scale * self.b_point(&UnitPoint::new(l))?.norm_sqr())
    }

    fn f_at_zero(&self) -> Result<f64> {
        if self.long_memory {
            return Err(ProcessError::Singularity(0.0));
        }
        let b = match (&self.den, &self.n) {
            (Den::One, _) => Complex64::new(1.0, 0.0),
            (Den::Series(bt), _) => Complex64::new(bt.iter().sum(), 0.0),
            (Den::PointPower { .. }, NKernel::PointMass(_)) | (_, NKernel::PointMass(_)) => {
                self.b_point(&UnitPoint::new(0.0))?
            }
            // N(1) = ∞ leaves 1/(α − φ̄′)
            (Den::Affine(alpha, phibar), _) if self.n_diverges() => {
                Complex64::new(1.0 / (alpha - phibar), 0.0)
            }
            // N(1) finite: the limit is approached at λ = 1e-9 to within
            // O(1e-9 |log λ|)
            _ => self.b_point(&UnitPoint::new(1e-9))?,
        };
        Ok(self.scale * b.norm_sqr())
    }

    fn n_diverges(&self) -> bool {
        match &self.n {
            NKernel::Singular(s) => s.d > 0.0,
            NKernel::Mixture { w, s, .. } => *w < 1.0 && s.d > 0.0,
            NKernel::BetaNegAlpha(_) | NKernel::Stretched(_) => true,
            NKernel::Bell { w, .. } => *w > 0.0,
            _ => false,
        }
    }

    /// `f_X(2πj/N)` for j = 0..=N/2; the j = 0 entry is 0 when the density diverges there.
    pub fn f_on_grid(&self, n: usize) -> Result<Vec<f64>> {
        let half = n / 2;
        if let Den::Series(bt) = &self.den {
            // B at the Fourier frequencies is the DFT of β̃ folded modulo N
            let mut buf = vec![Complex64::new(0.0, 0.0); n];
            for (k, &c) in bt.iter().enumerate() {
                buf[k % n] += c;
            }
            FftPlanner::new().plan_fft_forward(n).process(&mut buf);
            return Ok(buf[..=half]
                .iter()
                .map(|b| self.scale * b.norm_sqr())
                .collect());
        }
        let mut out = Vec::with_capacity(half + 1);
        out.push(if self.long_memory {
            0.0
        } else {
            self.f_at_zero().unwrap_or(0.0)
        });
        for j in 1..=half {
            out.push(self.f(2.0 * PI * j as f64 / n as f64)?);
        }
        Ok(out)
    }
}

fn fold(lambda: f64) -> f64 {
    let l = lambda.rem_euclid(2.0 * PI);
    if l > PI {
        2.0 * PI - l
    } else {
        l
    }
}

/// `f_X` on a grid of frequencies in [0, 2π].
pub fn spectral_density(model: &ModelSpec, lambda_grid: &[f64]) -> Result<Vec<f64>> {
    if let Some(&l) = lambda_grid
        .iter()
        .find(|l| !(**l >= 0.0 && **l <= 2.0 * PI))
    {
        return Err(ProcessError::InvalidArgument(format!(
            "frequency {l} outside [0, 2π]"
        )));
    }
    let t = Transfer::new(model)?;
    lambda_grid.iter().map(|&l| t.f(l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use hetero_distributions::Density;

    #[test]
    fn white_noise_spectrum() {
        let m =
            ModelSpec::new(Density::stretched_beta(5.0, 0.75), Coupling::Rational, 2.0).unwrap();
        let f = spectral_density(&m, &[0.0, 0.3, 3.0]).unwrap();
        for v in f {
            assert!((v - 4.0 / (2.0 * PI)).abs() < 1e-15);
        }
    }

    #[test]
    fn ar1_spectrum() {
        let m = ModelSpec::new(
            Density::PointMass { at: 0.0 },
            Coupling::Affine {
                alpha: 0.0,
                phibar: 0.5,
            },
            1.0,
        )
        .unwrap();
        let f = spectral_density(&m, &[PI, 0.0]).unwrap();
        assert!((f[0] - 1.0 / (2.0 * PI) / 2.25).abs() < 1e-15);
        assert!((f[1] - 1.0 / (2.0 * PI) / 0.25).abs() < 1e-14);
    }

    #[test]
    fn long_memory_is_singular_at_zero() {
        let d = Density::mixture(0.5, vec![0.1], vec![0.0], 0.3).unwrap();
        let m = ModelSpec::new(d, Coupling::Linear { alpha: 0.3 }, 1.0).unwrap();
        assert_eq!(
            spectral_density(&m, &[0.0]),
            Err(ProcessError::Singularity(0.0))
        );
    }

    #[test]
    fn prop_two_invertibility() {
        let cases = [(-0.3, 1.5, true), (-0.4, 0.2, false), (-0.2, 0.6, false)];
        for (alpha, beta, inv) in cases {
            let m = ModelSpec::new(
                Density::beta_neg_alpha(alpha),
                Coupling::PowerLaw { beta },
                1.0,
            )
            .unwrap();
            let t = Transfer::new(&m).unwrap();
            assert_eq!(
                t.invertible(),
                inv,
                "({alpha}, {beta}): D(1) = {:?}",
                t.d_at_one()
            );
        }
    }
}
