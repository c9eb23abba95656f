//! Autocovariance of the aggregate, from the spectral density or from the
//! MA(∞) coefficients, and power-law tail diagnostics.

use crate::error::{ProcessError, Result};
use crate::ma::MACoefficients;
use crate::model::{ModelSpec, MEAN_C};
use crate::series;
use crate::transfer::Transfer;
use hetero_distributions::quad::{jacobi, legendre};
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;
use std::ops::RangeInclusive;

/// Default spectral grid size.
pub const DEFAULT_GRID: usize = 1 << 16;

/// Grid cells next to 0 and π that are integrated by graded quadrature.
const NEAR_CELLS: usize = 32;
/// Order of the Gregory end correction on the bulk trapezoid.
const GREGORY_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcfMethod {
    Fft,
    MaTruncation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelACF {
    /// γ(0..=L)
    pub gamma: Vec<f64>,
    /// ρ(0..=L)
    pub rho: Vec<f64>,
    pub method: AcfMethod,
    /// Estimated absolute error on γ.
    pub error_bound: f64,
    pub warnings: Vec<String>,
}

impl ModelACF {
    fn from_gamma(
        gamma: Vec<f64>,
        method: AcfMethod,
        error_bound: f64,
        warnings: Vec<String>,
    ) -> Self {
        let g0 = gamma[0];
        let rho = gamma
            .iter()
            .map(|g| if g0 > 0.0 { g / g0 } else { 0.0 })
            .collect();
        Self {
            gamma,
            rho,
            method,
            error_bound,
            warnings,
        }
    }

    pub fn max_lag(&self) -> usize {
        self.gamma.len() - 1
    }

    /// Smallest one-step prediction variance over γ(0) from Durbin–Levinson;
    /// negative values mean the Toeplitz matrix is not positive semi-definite.
    pub fn min_prediction_ratio(&self) -> f64 {
        let g = &self.gamma;
        if g[0] <= 0.0 {
            return 0.0;
        }
        let mut phi: Vec<f64> = Vec::new();
        let mut v = g[0];
        let mut worst = 1.0f64;
        for k in 1..g.len() {
            let num = g[k]
                - phi
                    .iter()
                    .enumerate()
                    .map(|(j, p)| p * g[k - 1 - j])
                    .sum::<f64>();
            if v <= 0.0 {
                return worst.min(v / g[0]);
            }
            let kappa = num / v;
            let prev = phi.clone();
            for j in 0..phi.len() {
                phi[j] = prev[j] - kappa * prev[prev.len() - 1 - j];
            }
            phi.push(kappa);
            v *= 1.0 - kappa * kappa;
            worst = worst.min(v / g[0]);
        }
        worst
    }
}

/// Additive endpoint corrections `e_0..e_p` turning trapezoid weights into
/// Gregory weights of order `p`.
pub(crate) fn gregory_corrections(p: usize) -> Vec<f64> {
    const C: [f64; 8] = [
        1.0 / 12.0,
        1.0 / 24.0,
        19.0 / 720.0,
        3.0 / 160.0,
        863.0 / 60480.0,
        275.0 / 24192.0,
        33953.0 / 3628800.0,
        8183.0 / 1036800.0,
    ];
    let p = p.min(C.len());
    (0..=p)
        .map(|i| {
            let s: f64 = (i.max(1)..=p).map(|k| C[k - 1] * binom(k, i)).sum();
            if i % 2 == 0 {
                -s
            } else {
                s
            }
        })
        .collect()
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Nodes and weights for `∫_0^a g`, graded geometrically toward 0 and cut
/// fine enough for `cos(hx)` with h ≤ `lmax`. The innermost panel carries the
/// weight `x^e0`.
fn graded_rule(a: f64, depth: usize, e0: f64, lmax: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let gl = legendre(20);
    let (mut x, mut w, mut pw) = (Vec::new(), Vec::new(), Vec::new());
    let mut hi = a;
    for _ in 0..depth {
        let lo = hi / 4.0;
        let pieces = ((hi - lo) * lmax as f64 / 3.0).ceil().max(1.0) as usize;
        let step = (hi - lo) / pieces as f64;
        for s in 0..pieces {
            let c = lo + (s as f64 + 0.5) * step;
            for &(t, wt) in &gl {
                x.push(c + 0.5 * step * t);
                w.push(wt * 0.5 * step);
                pw.push(0.0);
            }
        }
        hi = lo;
    }
    // x^e0 carried by the rule: pw holds e0 so the caller divides it out
    let half = 0.5 * hi;
    for (t, wt) in jacobi(20, 0.0, e0) {
        x.push(half * (1.0 + t));
        w.push(wt * half.powf(1.0 + e0));
        pw.push(e0);
    }
    (x, w, pw)
}

/// `∫_0^a g(x) cos(hx) dx` for h = 0..=lmax, `g` possibly singular at 0.
fn near_integral<G: Fn(f64) -> Result<f64>>(
    g: G,
    a: f64,
    floor: f64,
    lmax: usize,
) -> Result<Vec<f64>> {
    let depth = ((a / floor).ln() / 4f64.ln()).ceil().max(1.0) as usize;
    // local exponent at the bottom of the grading
    let inner = a / 4f64.powi(depth as i32);
    let (g1, g2) = (g(inner)?, g(4.0 * inner)?);
    let e0 = if g1 > 0.0 && g2 > 0.0 {
        ((g2 / g1).ln() / 4f64.ln()).clamp(-0.95, 4.0)
    } else {
        0.0
    };
    let e0 = if e0.abs() < 1e-3 { 0.0 } else { e0 };
    let (x, w, pw) = graded_rule(a, depth, e0, lmax);
    let vals: Vec<f64> = x
        .iter()
        .zip(&w)
        .zip(&pw)
        .map(|((&xi, &wi), &p)| Ok(wi * g(xi)? / if p == 0.0 { 1.0 } else { xi.powf(p) }))
        .collect::<Result<_>>()?;
    Ok((0..=lmax)
        .map(|h| {
            x.iter()
                .zip(&vals)
                .map(|(&xi, v)| v * (h as f64 * xi).cos())
                .sum()
        })
        .collect())
}

/// `γ(h) = ∫_{−π}^{π} f_X(λ) e^{ihλ} dλ` for h = 0..=L on the grid `λ_j = 2πj/N`.
///
/// The bulk is a Gregory-corrected trapezoid evaluated by one inverse FFT.
/// The cells within `32·2π/N` of 0 and of π are integrated by geometrically
/// graded Gauss rules on the exact spectral density, so algebraic and
/// logarithmic singularities there cost no accuracy. The innermost panel
/// uses the local exponent measured from `f_X` at its two smallest points.
pub fn acf_via_fft(model: &ModelSpec, n: usize, lmax: usize) -> Result<ModelACF> {
    if !n.is_power_of_two() || n < 4 * lmax || n < 256 {
        return Err(ProcessError::InvalidArgument(format!(
            "grid size {n} must be a power of two, at least 256 and at least 4·L = {}",
            4 * lmax
        )));
    }
    let t = Transfer::new(model)?;
    if !t.invertible() {
        return Err(ProcessError::NonStationary(format!(
            "D(1) = {:.6} ≥ 1: no MA(∞) representation",
            t.d_at_one().unwrap_or(f64::NAN)
        )));
    }
    if model.sigma_eps == 0.0 {
        return Ok(ModelACF::from_gamma(
            vec![0.0; lmax + 1],
            AcfMethod::Fft,
            0.0,
            vec![],
        ));
    }
    let delta = 2.0 * PI / n as f64;
    let half = n / 2;
    let m = NEAR_CELLS;
    let f = t.f_on_grid(n)?;

    let bulk = |order: usize| -> Result<Vec<f64>> {
        let mut a = vec![0.0; half + 1];
        a[m..=half - m].copy_from_slice(&f[m..=half - m]);
        let corr = gregory_corrections(order);
        a[m] *= 0.5;
        a[half - m] *= 0.5;
        for (i, c) in corr.iter().enumerate() {
            a[m + i] += c * f[m + i];
            a[half - m - i] += c * f[half - m - i];
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for j in 1..half {
            buf[j] = Complex64::new(a[j], 0.0);
            buf[n - j] = buf[j];
        }
        FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
        let g0 = buf[0].re.abs().max(f64::MIN_POSITIVE);
        if let Some(bad) = buf.iter().take(lmax + 1).find(|v| v.im.abs() > 1e-10 * g0) {
            return Err(ProcessError::Numerical(format!(
                "imaginary residue {:.3e} in the inverse FFT",
                bad.im
            )));
        }
        Ok(buf.iter().take(lmax + 1).map(|v| delta * v.re).collect())
    };
    let main = bulk(GREGORY_ORDER)?;
    let lower = bulk(GREGORY_ORDER - 2)?;

    let a = m as f64 * delta;
    let near0 = near_integral(|x| t.f(x), a, 1e-13, lmax)?;
    let near_pi = near_integral(|x| t.f(PI - x), a, 1e-10, lmax)?;

    let gamma: Vec<f64> = (0..=lmax)
        .map(|h| {
            let sign = if h % 2 == 0 { 1.0 } else { -1.0 };
            main[h] + 2.0 * (near0[h] + sign * near_pi[h])
        })
        .collect();
    let err = main
        .iter()
        .zip(&lower)
        .fold(0.0f64, |e, (a, b)| e.max((a - b).abs()));
    Ok(ModelACF::from_gamma(gamma, AcfMethod::Fft, err, vec![]))
}

/// `γ(h) = E[c]² σ_ε² Σ β̃_k β̃_{k+h}`.
///
/// With a fitted tail the coefficients are continued to `16K` and the rest
/// of the sum is added in closed form; without one the sum stops at K.
pub fn acf_via_ma(ma: &MACoefficients, sigma_eps: f64, lmax: usize) -> ModelACF {
    let scale = MEAN_C * MEAN_C * sigma_eps * sigma_eps;
    let mut warnings = Vec::new();
    if ma.k < 10 * lmax {
        warnings.push(format!(
            "truncation K = {} is below 10·L = {}",
            ma.k,
            10 * lmax
        ));
    }
    let (gamma, err) = match &ma.tail {
        Some(tail) => {
            let top = 16 * ma.k + lmax + 1;
            let mut x = ma.beta_tilde.clone();
            x.extend(tail.extend(ma.k + 1, top));
            let mut g = series::autocorrelation(&x, lmax);
            for (h, v) in g.iter_mut().enumerate() {
                *v += tail.remainder(top - h, h);
            }
            // the fitted coefficients are good to about the fit residual
            let err = tail.residual * tail.square_tail(ma.k).abs();
            (g, err)
        }
        None => (
            series::autocorrelation(&ma.beta_tilde, lmax),
            ma.truncation_bound(),
        ),
    };
    ModelACF::from_gamma(
        gamma.into_iter().map(|v| v * scale).collect(),
        AcfMethod::MaTruncation,
        err * scale,
        warnings,
    )
}

/// Log-log fit of an autocorrelation tail.
#[derive(Debug, Clone, PartialEq)]
pub struct TailFit {
    /// Least-squares slope of `log ρ(h)` on `log h`.
    pub slope: f64,
    /// `d` implied by `slope = 2d − 1`.
    pub implied_d: f64,
    /// Change of the local log-log slope across the range, from a quadratic fit.
    pub curvature: f64,
    /// False when the curvature rules out a power law.
    pub power_law: bool,
    /// Lags used after dropping non-positive values.
    pub used: usize,
    pub trimmed: usize,
}

/// Local slopes that drift by more than this across the range mean the
/// decay is not a power law.
pub const CURVATURE_LIMIT: f64 = 0.25;

/// Power-law slope of `rho` over the lags in `range`.
pub fn tail_exponent(rho: &[f64], range: RangeInclusive<usize>) -> Result<TailFit> {
    let (lo, hi) = (*range.start(), *range.end());
    if lo == 0 || hi >= rho.len() || hi < lo + 4 {
        return Err(ProcessError::InvalidArgument(format!(
            "fit range {lo}..={hi} needs 1 ≤ lo, lo + 4 ≤ hi < {}",
            rho.len()
        )));
    }
    let pts: Vec<(f64, f64)> = (lo..=hi)
        .filter(|&h| rho[h] > 0.0)
        .map(|h| ((h as f64).ln(), rho[h].ln()))
        .collect();
    let trimmed = hi - lo + 1 - pts.len();
    if pts.len() < 5 {
        return Err(ProcessError::InvalidArgument(format!(
            "only {} positive autocorrelations in {lo}..={hi}",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let xm = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let ym = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - xm).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - xm) * (p.1 - ym)).sum();
    let slope = sxy / sxx;

    // quadratic in the centred log-lag; its slope changes by 2c·range
    let rows: Vec<[f64; 3]> = pts
        .iter()
        .map(|p| [1.0, p.0 - xm, (p.0 - xm).powi(2)])
        .collect();
    let mut ata = nalgebra::Matrix3::<f64>::zeros();
    let mut aty = nalgebra::Vector3::<f64>::zeros();
    for (r, p) in rows.iter().zip(&pts) {
        for i in 0..3 {
            aty[i] += r[i] * p.1;
            for j in 0..3 {
                ata[(i, j)] += r[i] * r[j];
            }
        }
    }
    let c = ata.lu().solve(&aty).map(|s| s[2]).unwrap_or(f64::NAN);
    let span = pts.last().unwrap().0 - pts[0].0;
    let curvature = 2.0 * c * span;
    Ok(TailFit {
        slope,
        implied_d: 0.5 * (slope + 1.0),
        curvature,
        power_law: curvature.abs() <= CURVATURE_LIMIT,
        used: pts.len(),
        trimmed,
    })
}
