//! Frequency-domain quadrature for the calibration family: the mixture
//! density with coupling `α(1 − φ)`, whose spectral density
//! `f(λ) = (σ_ε²/2π)|N/((1−α) + α(1−z)N)|²` is evaluated on a fixed node set
//! with the θ-independent parts of `N₁` precomputed.

use crate::error::Result;
use crate::theta::{PositivityTable, ThetaVector};
use hetero_distributions::quad::legendre;
use hetero_process::cauchy::{FourierCauchy, UnitPoint};
use hetero_process::kernels::SingularKernel;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Product of panel width and the highest frequency integrated on it.
const PHASE_PER_PANEL: f64 = 16.0;
/// Ratio of consecutive graded panels next to 0 and π.
const GRADING: f64 = 4.0;
/// Size of the last graded panel next to 0 and next to π.
const INNER_LIMIT: f64 = 1e-10;
const OUTER_LIMIT: f64 = 1e-10;

/// Composite Gauss–Legendre nodes on (0, π) for integrands `f(λ)·g(λ)` with
/// `g` a trigonometric polynomial of degree at most `max_freq`.
#[derive(Debug, Clone)]
pub struct SpectralGrid {
    pub lambda: Vec<f64>,
    pub weight: Vec<f64>,
    points: Vec<UnitPoint>,
}

impl SpectralGrid {
    pub fn new(max_freq: usize) -> Self {
        let width = (PHASE_PER_PANEL / max_freq.max(1) as f64).min(0.25);
        let panels = (PI / width).ceil() as usize;
        let h = PI / panels as f64;
        let (g20, g10) = (legendre(20), legendre(10));
        let mut lambda = Vec::new();
        let mut weight = Vec::new();
        let f = max_freq.max(1) as f64;
        let mut push = |lo: f64, hi: f64| {
            // short panels near the ends carry little phase
            let rule = if (hi - lo) * f > 4.0 { &g20 } else { &g10 };
            for &(s, w) in rule {
                lambda.push(0.5 * (lo + hi) + 0.5 * (hi - lo) * s);
                weight.push(0.5 * (hi - lo) * w);
            }
        };
        let mut hi = h;
        while hi > INNER_LIMIT {
            push(hi / GRADING, hi);
            hi /= GRADING;
        }
        push(0.0, hi);
        for p in 1..panels - 1 {
            push(p as f64 * h, (p + 1) as f64 * h);
        }
        let mut gap = h;
        while gap > OUTER_LIMIT {
            push(PI - gap, PI - gap / GRADING);
            gap /= GRADING;
        }
        push(PI - gap, PI);
        let points = lambda.iter().map(|&l| UnitPoint::new(l)).collect();
        Self {
            lambda,
            weight,
            points,
        }
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// `∫_0^π g` for `g` sampled at the nodes.
    pub fn integrate(&self, g: &[f64]) -> f64 {
        self.weight.iter().zip(g).map(|(w, v)| w * v).sum()
    }
}

/// `f(λ; θ)` at the nodes of a [`SpectralGrid`] for θ of order up to `q`.
#[derive(Debug, Clone)]
pub struct SpectrumEvaluator {
    pub grid: SpectralGrid,
    q: usize,
    /// node-major `C₀, C₁..C_q, S₁..S_q`
    basis: Vec<Complex64>,
    positivity: PositivityTable,
}

impl SpectrumEvaluator {
    pub fn new(q: usize, max_freq: usize) -> Self {
        let grid = SpectralGrid::new(max_freq);
        let fc = FourierCauchy::new(q);
        let stride = 2 * q + 1;
        let mut basis = Vec::with_capacity(grid.len() * stride);
        for pt in &grid.points {
            let (c, s) = fc.basis(pt);
            basis.extend_from_slice(&c);
            basis.extend_from_slice(&s[1..]);
        }
        Self {
            grid,
            q,
            basis,
            positivity: PositivityTable::new(q),
        }
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// Θ membership at this evaluator's order.
    pub fn check(&self, theta: &ThetaVector) -> Result<()> {
        if theta.q() > self.q {
            return Err(crate::error::CalibError::InvalidArgument(format!(
                "θ of order {} on an evaluator of order {}",
                theta.q(),
                self.q
            )));
        }
        self.positivity.check(&theta.padded(self.q))
    }

    /// Spectral density at every node.
    pub fn spectrum(&self, theta: &ThetaVector) -> Result<Vec<f64>> {
        self.check(theta)?;
        let q = self.q;
        let stride = 2 * q + 1;
        let kern = (theta.w < 1.0).then(|| SingularKernel::new(theta.d));
        let scale = theta.sigma_eps * theta.sigma_eps / (2.0 * PI);
        let alpha = theta.alpha;
        Ok(self
            .grid
            .points
            .iter()
            .enumerate()
            .map(|(j, pt)| {
                let row = &self.basis[j * stride..(j + 1) * stride];
                let mut n1 = 0.5 * row[0];
                for (n, (&an, &bn)) in theta.a.iter().zip(&theta.b).enumerate() {
                    n1 += an * row[n + 1] + bn * row[q + n + 1];
                }
                let n2 = kern.as_ref().map_or(Complex64::new(0.0, 0.0), |k| k.n2(pt));
                let n = theta.w * n1 + (1.0 - theta.w) * n2;
                let b = n / ((1.0 - alpha) + alpha * pt.u * n);
                scale * b.norm_sqr()
            })
            .collect())
    }
}

/// `η_L(θ) = (γ(h;θ) − γ(0;θ))_{h=1..L} = (2∫_0^π f(λ)(cos hλ − 1) dλ)_h`.
#[derive(Debug, Clone)]
pub struct EtaModel {
    pub eval: SpectrumEvaluator,
    l: usize,
    /// lag-major `−4 W_j sin²(hλ_j/2)`
    table: Vec<f64>,
}

impl EtaModel {
    pub fn new(q: usize, l: usize) -> Self {
        let eval = SpectrumEvaluator::new(q, l);
        let g = &eval.grid;
        let mut table = Vec::with_capacity(l * g.len());
        for h in 1..=l {
            for (lam, w) in g.lambda.iter().zip(&g.weight) {
                let s = (0.5 * h as f64 * lam).sin();
                table.push(-4.0 * w * s * s);
            }
        }
        Self { eval, l, table }
    }

    pub fn lags(&self) -> usize {
        self.l
    }

    pub fn order(&self) -> usize {
        self.eval.order()
    }

    pub fn eta(&self, theta: &ThetaVector) -> Result<Vec<f64>> {
        let f = self.eval.spectrum(theta)?;
        Ok(self
            .table
            .chunks(f.len())
            .map(|row| row.iter().zip(&f).map(|(a, b)| a * b).sum())
            .collect())
    }
}

/// `η_L(θ)` for a single θ.
pub fn model_eta(theta: &ThetaVector, l: usize) -> Result<Vec<f64>> {
    EtaModel::new(theta.q(), l).eta(theta)
}
