//! The parameter vector `θ = (a₁..a_q, b₁..b_q, α, w, σ_ε, d)` and its admissible set.

use crate::error::{CalibError, Result};
use hetero_distributions::fourier::{POSITIVITY_FLOOR, POSITIVITY_GRID};
use hetero_distributions::{Coupling, Density, FourierDensity};
use hetero_process::ModelSpec;
use std::f64::consts::PI;

/// Upper end of the memory parameter: beyond ½ the autocovariances do not exist.
pub const D_MAX: f64 = 0.5;

/// Distance to the edge of Θ below which asymptotic normality is flagged.
pub const BOUNDARY_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct ThetaVector {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub alpha: f64,
    pub w: f64,
    pub sigma_eps: f64,
    pub d: f64,
}

impl ThetaVector {
    pub fn new(
        a: Vec<f64>,
        b: Vec<f64>,
        alpha: f64,
        w: f64,
        sigma_eps: f64,
        d: f64,
    ) -> Result<Self> {
        if a.len() != b.len() {
            return Err(CalibError::InvalidArgument(format!(
                "{} cosine vs {} sine coefficients",
                a.len(),
                b.len()
            )));
        }
        Ok(Self {
            a,
            b,
            alpha,
            w,
            sigma_eps,
            d,
        })
    }

    /// Neutral starting point of order `q`.
    pub fn neutral(q: usize, sigma_eps: f64) -> Self {
        Self {
            a: vec![0.0; q],
            b: vec![0.0; q],
            alpha: 0.3,
            w: 0.5,
            sigma_eps,
            d: 0.25,
        }
    }

    pub fn q(&self) -> usize {
        self.a.len()
    }

    /// `2q + 4`.
    pub fn dim(&self) -> usize {
        2 * self.q() + 4
    }

    /// Flattened as `(a, b, α, w, σ_ε, d)`.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.dim());
        v.extend_from_slice(&self.a);
        v.extend_from_slice(&self.b);
        v.extend_from_slice(&[self.alpha, self.w, self.sigma_eps, self.d]);
        v
    }

    pub fn from_slice(v: &[f64]) -> Result<Self> {
        if v.len() < 4 || v.len() % 2 != 0 {
            return Err(CalibError::InvalidArgument(format!(
                "parameter vector of length {} is not 2q+4",
                v.len()
            )));
        }
        let q = (v.len() - 4) / 2;
        Ok(Self {
            a: v[..q].to_vec(),
            b: v[q..2 * q].to_vec(),
            alpha: v[2 * q],
            w: v[2 * q + 1],
            sigma_eps: v[2 * q + 2],
            d: v[2 * q + 3],
        })
    }

    /// Names in flattened order, e.g. `a1, b1, alpha, w, sigma_eps, d`.
    pub fn names(q: usize) -> Vec<String> {
        let mut n: Vec<String> = (1..=q).map(|i| format!("a{i}")).collect();
        n.extend((1..=q).map(|i| format!("b{i}")));
        n.extend(["alpha", "w", "sigma_eps", "d"].map(String::from));
        n
    }

    /// Index of `d` in the flattened vector.
    pub fn d_index(q: usize) -> usize {
        2 * q + 3
    }

    /// Pads the Fourier coefficients with zeros up to order `q`.
    pub fn padded(&self, q: usize) -> Self {
        let mut t = self.clone();
        t.a.resize(q.max(self.q()), 0.0);
        t.b.resize(q.max(self.q()), 0.0);
        t
    }

    pub fn regular(&self) -> FourierDensity {
        FourierDensity {
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    /// Scalar constraints of Θ, without the positivity of `f₁`.
    pub fn check_box(&self) -> Result<()> {
        let bad = |what: String| Err(CalibError::Domain(what));
        if self.to_vec().iter().any(|v| !v.is_finite()) {
            return bad("non-finite entry".into());
        }
        if !(0.0..=1.0).contains(&self.w) {
            return bad(format!("w = {} outside [0, 1]", self.w));
        }
        if !(self.d > 0.0 && self.d < D_MAX) {
            return bad(format!("d = {} outside (0, {D_MAX})", self.d));
        }
        if !(self.sigma_eps > 0.0) {
            return bad(format!("sigma_eps = {} not positive", self.sigma_eps));
        }
        if !(0.0..1.0).contains(&self.alpha) {
            return bad(format!("alpha = {} outside [0, 1)", self.alpha));
        }
        Ok(())
    }

    /// Full membership in Θ.
    pub fn check(&self) -> Result<()> {
        self.check_box()?;
        let min = self.regular().grid_min();
        if min < -POSITIVITY_FLOOR {
            return Err(CalibError::Domain(format!(
                "regular density reaches {min:.3e} < 0"
            )));
        }
        Ok(())
    }

    /// Names of the constraints that θ is within [`BOUNDARY_TOL`] of.
    pub fn boundary_flags(&self) -> Vec<String> {
        let mut f = Vec::new();
        let mut near = |cond: bool, what: &str| {
            if cond {
                f.push(what.to_string());
            }
        };
        near(self.w < BOUNDARY_TOL, "w = 0");
        near(self.w > 1.0 - BOUNDARY_TOL, "w = 1");
        near(self.d < BOUNDARY_TOL, "d = 0");
        near(self.d > D_MAX - BOUNDARY_TOL, "d = 1/2");
        near(self.alpha < BOUNDARY_TOL, "alpha = 0");
        near(self.alpha > 1.0 - BOUNDARY_TOL, "alpha = 1");
        near(self.regular().grid_min() < BOUNDARY_TOL, "f1 = 0");
        f
    }

    /// The mixture model with coupling `E[ψ|φ] = α(1 − φ)`.
    pub fn model(&self) -> Result<ModelSpec> {
        self.check()?;
        let density = Density::mixture(self.w, self.a.clone(), self.b.clone(), self.d)?;
        Ok(ModelSpec::new(
            density,
            Coupling::Linear { alpha: self.alpha },
            self.sigma_eps,
        )?)
    }

    /// `f(x; θ) = w f₁(x) + (1 − w) f₂(x)` with `f₂` the Beta(2, 1−d) density on [0, 1].
    pub fn density(&self, x: f64) -> f64 {
        self.w * self.regular().eval(x) + (1.0 - self.w) * singular_density(self.d, x)
    }

    /// `∂f(x; θ)/∂θ` in flattened order. The `d` entry is infinite at `x = 1` when `w < 1`.
    pub fn density_gradient(&self, x: f64) -> Vec<f64> {
        let q = self.q();
        let mut g = vec![0.0; self.dim()];
        for n in 0..q {
            let t = (n as f64 + 1.0) * PI * x;
            g[n] = self.w * t.cos();
            g[q + n] = self.w * t.sin();
        }
        let f2 = singular_density(self.d, x);
        g[2 * q + 1] = self.regular().eval(x) - f2;
        let d = self.d;
        g[2 * q + 3] = if (0.0..1.0).contains(&x) {
            (self.w - 1.0) * f2 * ((-x).ln_1p() + (3.0 - 2.0 * d) / ((1.0 - d) * (2.0 - d)))
        } else if x == 1.0 && self.w < 1.0 {
            f64::INFINITY
        } else {
            0.0
        };
        g
    }
}

/// `(1−d)(2−d) x (1−x)^{−d}` on [0, 1), zero below 0.
pub fn singular_density(d: f64, x: f64) -> f64 {
    if !(0.0..=1.0).contains(&x) {
        return 0.0;
    }
    if x == 1.0 {
        return f64::INFINITY;
    }
    (1.0 - d) * (2.0 - d) * x * (-d * (-x).ln_1p()).exp()
}

/// Cosines and sines of the positivity grid, for repeated Θ checks at fixed `q`.
#[derive(Debug, Clone)]
pub struct PositivityTable {
    q: usize,
    /// point-major `(cos nπx, sin nπx)`, n = 1..=q
    trig: Vec<(f64, f64)>,
}

impl PositivityTable {
    pub fn new(q: usize) -> Self {
        let mut trig = Vec::with_capacity(POSITIVITY_GRID * q);
        for i in 0..POSITIVITY_GRID {
            let x = -1.0 + 2.0 * i as f64 / (POSITIVITY_GRID - 1) as f64;
            for n in 1..=q {
                let t = n as f64 * PI * x;
                trig.push((t.cos(), t.sin()));
            }
        }
        Self { q, trig }
    }

    pub fn min(&self, a: &[f64], b: &[f64]) -> f64 {
        if self.q == 0 {
            return 0.5;
        }
        self.trig
            .chunks(self.q)
            .map(|row| {
                0.5 + row
                    .iter()
                    .zip(a.iter().zip(b))
                    .map(|(&(c, s), (&an, &bn))| an * c + bn * s)
                    .sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Membership in Θ using the cached grid.
    pub fn check(&self, theta: &ThetaVector) -> Result<()> {
        theta.check_box()?;
        let min = self.min(&theta.a, &theta.b);
        if min < -POSITIVITY_FLOOR {
            return Err(CalibError::Domain(format!(
                "regular density reaches {min:.3e} < 0"
            )));
        }
        Ok(())
    }
}
