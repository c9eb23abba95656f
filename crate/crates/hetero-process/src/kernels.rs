//! `N(z) = E[1/(1 − zφ)]` for each density family, and the power-law
//! coupling's `D(z) = E[(1−φ)^β/(1 − zφ)]` where it has a closed form.

use crate::cauchy::{CauchyGrid, FourierCauchy, UnitPoint};
use hetero_distributions::quad::jacobi;
use hetero_distributions::{bell_normalizer, Density, FourierDensity, ParametricDensity};
use num_complex::Complex64;
use statrs::function::beta::ln_beta;
use std::f64::consts::PI;

/// Gauss–Jacobi nodes for `S(ζ)` in the band `0.6 < |ζ| < 1.6`, where the
/// cut `[−1, 0]` is at least 0.3 away.
const JACOBI_NODES: usize = 24;

/// `N₂(z)` for the singular Beta(2, 1−d) density on [0, 1].
///
/// With `ζ = (1−z)/z`, `N₂ = (1/z)[(1−d)(2−d) S(ζ)/z − (2−d)]` where
/// `S(ζ) = ∫_0^1 t^{-d}/(t+ζ) dt`.
#[derive(Debug, Clone)]
pub struct SingularKernel {
    pub d: f64,
    /// `π/sin(πd) − 1/d`
    c: f64,
    jac: Vec<(f64, f64)>,
}

impl SingularKernel {
    pub fn new(d: f64) -> Self {
        let c = if d < 1e-3 {
            let x = PI * d;
            (x * x / 6.0 + 7.0 * x.powi(4) / 360.0 + 31.0 * x.powi(6) / 15120.0)
                / d.max(f64::MIN_POSITIVE)
        } else {
            PI / (PI * d).sin() - 1.0 / d
        };
        let scale = 2f64.powf(d - 1.0);
        let jac = jacobi(JACOBI_NODES, 0.0, -d)
            .into_iter()
            .map(|(s, w)| (0.5 * (1.0 + s), w * scale))
            .collect();
        Self { d, c, jac }
    }

    pub fn s(&self, zeta: Complex64) -> Complex64 {
        let d = self.d;
        let r = zeta.norm();
        if r <= 0.6 {
            // πζ^{-d}/sin(πd) − Σ_j (−ζ)^j/(j+d), the j = 0 term merged with the pole
            let lz = zeta.ln();
            let e = -d * lz;
            let expm1 = if e.norm() < 1e-3 {
                e * (1.0 + e * (0.5 + e * (1.0 / 6.0 + e / 24.0)))
            } else {
                e.exp() - 1.0
            };
            let ratio = if d == 0.0 { -lz } else { expm1 / d };
            let mut sum = self.c * (e.exp()) + ratio;
            let mut p = Complex64::new(1.0, 0.0);
            for j in 1..200 {
                p *= -zeta;
                let t = p / (j as f64 + d);
                sum -= t;
                if t.norm() < 1e-18 * sum.norm() {
                    break;
                }
            }
            sum
        } else if r >= 1.6 {
            let inv = 1.0 / zeta;
            let mut p = inv;
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..200 {
                let t = p / (j as f64 + 1.0 - d);
                sum += t;
                if t.norm() < 1e-18 * sum.norm() {
                    break;
                }
                p *= -inv;
            }
            sum
        } else {
            self.jac.iter().map(|&(t, w)| w / (t + zeta)).sum()
        }
    }

    pub fn n2(&self, pt: &UnitPoint) -> Complex64 {
        let d = self.d;
        let zeta = pt.u / pt.z;
        let s = self.s(zeta);
        ((1.0 - d) * (2.0 - d) * s / pt.z - (2.0 - d)) / pt.z
    }
}

/// Stretched Beta `(1+x)^{p−1}(1−x)^{q−1}/(2^{p+q−1}B(p,q))` on [-1, 1].
#[derive(Debug, Clone)]
pub struct StretchedKernel {
    grid: CauchyGrid,
    ones: Vec<f64>,
}

impl StretchedKernel {
    pub fn new(p: f64, q: f64) -> Self {
        let grid = CauchyGrid::new(0.125, 0.125, q - 1.0, p - 1.0);
        let norm = ((p + q - 1.0) * 2f64.ln() + ln_beta(p, q)).exp();
        let ones = vec![1.0 / norm; grid.nodes.len()];
        Self { grid, ones }
    }

    pub fn n(&self, pt: &UnitPoint) -> Complex64 {
        self.grid.apply(pt, &self.ones)
    }
}

/// Bell component `(1−x²) exp(−(x−m)²/2σ²)/K`.
#[derive(Debug, Clone)]
pub struct BellKernel {
    grid: CauchyGrid,
    h: Vec<f64>,
}

impl BellKernel {
    pub fn new(m: f64, sigma: f64) -> Self {
        let width = (0.5 * sigma).min(0.125);
        let grid = CauchyGrid::new(width, width, 0.0, 0.0);
        let k = bell_normalizer(m, sigma);
        let h = grid
            .nodes
            .iter()
            .map(|n| n.dlo * n.dhi * (-0.5 * ((n.x - m) / sigma).powi(2)).exp() / k)
            .collect();
        Self { grid, h }
    }

    pub fn n(&self, pt: &UnitPoint) -> Complex64 {
        self.grid.apply(pt, &self.h)
    }
}

/// `N(z)` for any supported density.
#[derive(Debug, Clone)]
pub enum NKernel {
    Fourier {
        fc: FourierCauchy,
        f: FourierDensity,
    },
    Singular(SingularKernel),
    Mixture {
        w: f64,
        fc: FourierCauchy,
        f: FourierDensity,
        s: SingularKernel,
    },
    PointMass(f64),
    BetaNegAlpha(f64),
    Stretched(StretchedKernel),
    Bell {
        w: f64,
        s: StretchedKernel,
        b: BellKernel,
    },
}

impl NKernel {
    pub fn new(density: &Density) -> Self {
        match density {
            Density::Fourier(f) => NKernel::Fourier {
                fc: FourierCauchy::new(f.order()),
                f: f.clone(),
            },
            Density::Singular(s) => NKernel::Singular(SingularKernel::new(s.d)),
            Density::Mixture(m) => NKernel::Mixture {
                w: m.w,
                fc: FourierCauchy::new(m.regular.order()),
                f: m.regular.clone(),
                s: SingularKernel::new(m.singular.d),
            },
            Density::PointMass { at } => NKernel::PointMass(*at),
            Density::Parametric(p) => match *p {
                ParametricDensity::BetaNegAlpha { alpha } => NKernel::BetaNegAlpha(alpha),
                ParametricDensity::StretchedBeta { p, q } => {
                    NKernel::Stretched(StretchedKernel::new(p, q))
                }
                ParametricDensity::BellMixture { p, q, w, m, sigma } => NKernel::Bell {
                    w,
                    s: StretchedKernel::new(p, q),
                    b: BellKernel::new(m, sigma),
                },
            },
        }
    }

    pub fn eval(&self, pt: &UnitPoint) -> Complex64 {
        match self {
            NKernel::Fourier { fc, f } => fc.n1(pt, &f.a, &f.b),
            NKernel::Singular(s) => s.n2(pt),
            NKernel::Mixture { w, fc, f, s } => {
                let n1 = if *w > 0.0 {
                    fc.n1(pt, &f.a, &f.b)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                let n2 = if *w < 1.0 {
                    s.n2(pt)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                *w * n1 + (1.0 - *w) * n2
            }
            NKernel::PointMass(at) => 1.0 / (1.0 - pt.z * *at),
            NKernel::BetaNegAlpha(alpha) => pt.u.powf(*alpha),
            NKernel::Stretched(s) => s.n(pt),
            NKernel::Bell { w, s, b } => {
                let ns = if *w > 0.0 {
                    s.n(pt)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                *w * ns + (1.0 - *w) * b.n(pt)
            }
        }
    }
}

/// The stretched Beta `N(z)` through the hypergeometric form
/// `(1−z)^{q−1}(1+z)^{−q} ₂F₁(p+q−1, q; p+q; 2z/(1+z))`.
pub fn stretched_beta_n_hypergeometric(
    p: f64,
    q: f64,
    pt: &UnitPoint,
) -> crate::error::Result<Complex64> {
    let w = 2.0 * pt.z / pt.v;
    let f = crate::special::hypergeometric_2f1(p + q - 1.0, q, p + q, w)?;
    Ok(pt.u.powf(q - 1.0) * pt.v.powf(-q) * f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_series_and_quadrature_agree_at_band_edges() {
        for &d in &[0.0, 0.1, 0.3, 0.45] {
            let k = SingularKernel::new(d);
            // on the unit circle ζ = e^{iλ} − 1 has |ζ| = 2 sin(λ/2), arg ζ = π/2 + λ/2
            for &r in &[0.6f64, 1.6] {
                let lam = 2.0 * (0.5 * r).asin();
                for &da in &[-0.1, 0.0, 0.1] {
                    let zeta = Complex64::from_polar(r, 0.5 * PI + 0.5 * lam + da);
                    let series = k.s(zeta);
                    let quad: Complex64 = k.jac.iter().map(|&(t, w)| w / (t + zeta)).sum();
                    assert!((series - quad).norm() < 1e-12 * quad.norm(), "d={d} r={r}");
                }
            }
        }
    }

    #[test]
    fn beta_two_one_has_closed_form() {
        // d = 0: density 2x on [0,1], N = -2/z - 2 ln(1-z)/z²
        let k = SingularKernel::new(0.0);
        for &lam in &[0.01, 0.5, 1.2, 2.9] {
            let pt = UnitPoint::new(lam);
            let exact = -2.0 / pt.z - 2.0 * pt.u.ln() / (pt.z * pt.z);
            assert!((k.n2(&pt) - exact).norm() < 1e-13 * exact.norm());
        }
    }

    #[test]
    fn stretched_quadrature_matches_hypergeometric_form() {
        for &(p, q) in &[(5.0, 0.75), (2.5, 0.6)] {
            let k = StretchedKernel::new(p, q);
            for &lam in &[1e-8, 0.01, 0.4, 1.0, 1.57, 2.2, 3.0] {
                let pt = UnitPoint::new(lam);
                let a = k.n(&pt);
                let b = stretched_beta_n_hypergeometric(p, q, &pt).unwrap();
                assert!(
                    (a - b).norm() < 1e-9 * b.norm(),
                    "p={p} q={q} lam={lam}: {a} vs {b}"
                );
            }
        }
    }
}
