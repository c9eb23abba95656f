//! Estimation drivers: the warm-started "step by step" Nelder–Mead sequence
//! over increasing Fourier order, a single-shot fit, and differential evolution.

use crate::asymptotic::{eta_jacobian, reduced_covariance, sandwich, WeightingPolicy};
use crate::error::{CalibError, Result};
use crate::objective::{sample_eta, Criterion, Weight};
use crate::optim::{
    differential_evolution, nelder_mead, DeOptions, NelderMeadOptions, OptimResult,
};
use crate::sigma2::{sigma2_with, Sigma2Form};
use crate::spectral::{EtaModel, SpectrumEvaluator};
use crate::theta::{ThetaVector, D_MAX};
use nalgebra::DMatrix;

/// Lags used when none are given.
pub const DEFAULT_LAGS: usize = 120;

#[derive(Debug, Clone, PartialEq)]
pub struct FitOptions {
    pub l: usize,
    /// `Identity`: one stage with `W = I`. `Sigma2`: a second stage with
    /// `W = Σ²(θ̂₁)` started from the first-stage estimate.
    pub weighting: WeightingPolicy,
    pub form: Sigma2Form,
    pub nm: NelderMeadOptions,
    /// Skip `A_L` and standard errors.
    pub skip_covariance: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            l: DEFAULT_LAGS,
            weighting: WeightingPolicy::Sigma2,
            form: Sigma2Form::Bartlett,
            nm: NelderMeadOptions::default(),
            skip_covariance: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageReport {
    pub q: usize,
    pub weighting: WeightingPolicy,
    pub objective: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct EstimationResult {
    pub theta_hat: ThetaVector,
    pub objective_value: f64,
    /// `A_L(θ̂)`; `None` with the reason in `covariance_error` when it could not be formed.
    pub a_l: Option<DMatrix<f64>>,
    pub covariance_error: Option<String>,
    /// `√(A_ii/T)` in flattened order, NaN without `A_L`.
    pub se: Vec<f64>,
    pub l_used: usize,
    pub t: usize,
    pub stages: Vec<StageReport>,
    /// Edges of Θ within reach of θ̂; asymptotic normality is not claimed when non-empty.
    pub boundary: Vec<String>,
    /// Largest negative eigenvalue removed from the `Σ²` used as weight.
    pub sigma2_clipped: f64,
}

impl EstimationResult {
    pub fn converged(&self) -> bool {
        self.stages.iter().all(|s| s.converged)
    }

    pub fn se_d(&self) -> f64 {
        self.se[ThetaVector::d_index(self.theta_hat.q())]
    }

    /// `"0.33 (0.06)"`.
    pub fn d_with_se(&self) -> String {
        format_estimate(self.theta_hat.d, self.se_d())
    }
}

/// Estimate with its standard error in parentheses, two decimals.
pub fn format_estimate(value: f64, se: f64) -> String {
    format!("{value:.2} ({se:.2})")
}

fn stage(
    crit: &Criterion,
    start: &ThetaVector,
    q: usize,
    nm: &NelderMeadOptions,
    weighting: WeightingPolicy,
) -> Result<(ThetaVector, StageReport)> {
    let x0 = start.padded(q).to_vec();
    let r: OptimResult = nelder_mead(|x| crit.value_flat(x), &x0, nm)?;
    let report = StageReport {
        q,
        weighting,
        objective: r.value,
        iterations: r.iterations,
        evaluations: r.evaluations,
        converged: r.converged,
        trace: r.trace,
    };
    Ok((ThetaVector::from_slice(&r.x)?, report))
}

fn sample_sd(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

fn check_lengths(t: usize, l: usize, q: usize) -> Result<()> {
    if l < 2 * q + 4 {
        return Err(CalibError::InvalidArgument(format!(
            "L = {l} below 2q+4 = {}",
            2 * q + 4
        )));
    }
    if t <= l {
        return Err(CalibError::InvalidArgument(format!(
            "T = {t} must exceed L = {l}"
        )));
    }
    Ok(())
}

/// Second stage and covariance at θ̂ of order `q`.
fn finish(
    eta: &EtaModel,
    eta_hat: &[f64],
    t: usize,
    theta: ThetaVector,
    first: f64,
    mut stages: Vec<StageReport>,
    opts: &FitOptions,
) -> Result<EstimationResult> {
    let q = eta.order();
    let l = eta.lags();
    let s2_eval = SpectrumEvaluator::new(q, 2 * l);
    let mut theta = theta;
    let mut value = first;
    let mut weight = Weight::identity(l);
    let mut clipped = 0.0;
    if opts.weighting == WeightingPolicy::Sigma2 {
        let s2 = sigma2_with(&s2_eval, &theta, l, opts.form)?;
        clipped = s2.clipped;
        weight = Weight::new(s2.matrix)?;
        let crit = Criterion::new(eta.clone(), eta_hat.to_vec(), weight.clone())?;
        let (th, rep) = stage(&crit, &theta, q, &opts.nm, WeightingPolicy::Sigma2)?;
        theta = th;
        value = rep.objective;
        stages.push(rep);
    }
    let names = ThetaVector::names(q);
    let cov = if opts.skip_covariance {
        Err("not requested".to_string())
    } else {
        (|| -> Result<DMatrix<f64>> {
            let g = eta_jacobian(eta, &theta)?;
            let s2 = sigma2_with(&s2_eval, &theta, l, opts.form)?.matrix;
            match opts.weighting {
                WeightingPolicy::Identity => sandwich(&g, &weight, &s2, &names),
                WeightingPolicy::Sigma2 => reduced_covariance(&g, &Weight::new(s2)?, &names),
            }
        })()
        .map_err(|e| e.to_string())
    };
    let (a_l, covariance_error) = match cov {
        Ok(a) => (Some(a), None),
        Err(e) => (None, Some(e)),
    };
    let se = match &a_l {
        Some(a) => (0..a.nrows())
            .map(|i| (a[(i, i)].max(0.0) / t as f64).sqrt())
            .collect(),
        None => vec![f64::NAN; theta.dim()],
    };
    Ok(EstimationResult {
        boundary: theta.boundary_flags(),
        theta_hat: theta,
        objective_value: value,
        a_l,
        covariance_error,
        se,
        l_used: l,
        t,
        stages,
        sigma2_clipped: clipped,
    })
}

/// Step-by-step fit from a sample η: order 1 from the neutral start, then
/// each higher order warm-started with zero-padded coefficients, all with
/// `W = I`; then the optional efficient stage at `q_target`.
pub fn step_by_step_from_eta(
    eta_hat: &[f64],
    t: usize,
    sigma_start: f64,
    q_target: usize,
    opts: &FitOptions,
) -> Result<EstimationResult> {
    let q_target = q_target.max(1);
    check_lengths(t, opts.l, q_target)?;
    if eta_hat.len() != opts.l {
        return Err(CalibError::InvalidArgument(format!(
            "{} sample differences for L = {}",
            eta_hat.len(),
            opts.l
        )));
    }
    let mut theta = ThetaVector::neutral(1, sigma_start);
    let mut stages = Vec::new();
    let mut value = f64::INFINITY;
    let mut eta = EtaModel::new(1, opts.l);
    for q in 1..=q_target {
        eta = EtaModel::new(q, opts.l);
        let crit = Criterion::new(eta.clone(), eta_hat.to_vec(), Weight::identity(opts.l))?;
        let (th, rep) = stage(&crit, &theta, q, &opts.nm, WeightingPolicy::Identity)?;
        theta = th;
        value = rep.objective;
        stages.push(rep);
    }
    finish(&eta, eta_hat, t, theta, value, stages, opts)
}

pub fn step_by_step_fit(
    series: &[f64],
    q_target: usize,
    opts: &FitOptions,
) -> Result<EstimationResult> {
    check_lengths(series.len(), opts.l, q_target.max(1))?;
    let eta_hat = sample_eta(series, opts.l)?;
    step_by_step_from_eta(&eta_hat, series.len(), sample_sd(series), q_target, opts)
}

/// Nelder–Mead at order `q` directly from the neutral start.
pub fn single_shot_from_eta(
    eta_hat: &[f64],
    t: usize,
    sigma_start: f64,
    q: usize,
    opts: &FitOptions,
) -> Result<EstimationResult> {
    check_lengths(t, opts.l, q)?;
    let eta = EtaModel::new(q, opts.l);
    let crit = Criterion::new(eta.clone(), eta_hat.to_vec(), Weight::identity(opts.l))?;
    let (theta, rep) = stage(
        &crit,
        &ThetaVector::neutral(q, sigma_start),
        q,
        &opts.nm,
        WeightingPolicy::Identity,
    )?;
    let value = rep.objective;
    finish(&eta, eta_hat, t, theta, value, vec![rep], opts)
}

pub fn single_shot_fit(series: &[f64], q: usize, opts: &FitOptions) -> Result<EstimationResult> {
    check_lengths(series.len(), opts.l, q)?;
    let eta_hat = sample_eta(series, opts.l)?;
    single_shot_from_eta(&eta_hat, series.len(), sample_sd(series), q, opts)
}

/// Shrinks the Fourier coefficients toward zero until `f₁ ≥ 0`.
fn project_fourier(x: &mut [f64], eval: &SpectrumEvaluator) {
    let Ok(mut t) = ThetaVector::from_slice(x) else {
        return;
    };
    for _ in 0..60 {
        if eval.check(&t).is_ok() {
            break;
        }
        t.a.iter_mut().chain(t.b.iter_mut()).for_each(|v| *v *= 0.8);
    }
    x.copy_from_slice(&t.to_vec());
}

/// Differential evolution on the first stage (`W = I`), then the same
/// efficient stage and covariance as the step-by-step fit.
pub fn de_fit(
    series: &[f64],
    q: usize,
    opts: &FitOptions,
    de: &DeOptions,
) -> Result<EstimationResult> {
    check_lengths(series.len(), opts.l, q)?;
    let eta_hat = sample_eta(series, opts.l)?;
    let sd = sample_sd(series);
    let eta = EtaModel::new(q, opts.l);
    let crit = Criterion::new(eta.clone(), eta_hat.clone(), Weight::identity(opts.l))?;
    let mut bounds = vec![(-0.5, 0.5); 2 * q];
    bounds.extend([
        (0.0, 0.999),
        (0.0, 1.0),
        (1e-3 * sd, 3.0 * sd),
        (1e-3, D_MAX - 1e-3),
    ]);
    let start = ThetaVector::neutral(q, sd).to_vec();
    let r = differential_evolution(
        |x| crit.value_flat(x),
        &bounds,
        Some(&start),
        |x| project_fourier(x, &eta.eval),
        de,
    )?;
    let rep = StageReport {
        q,
        weighting: WeightingPolicy::Identity,
        objective: r.value,
        iterations: r.iterations,
        evaluations: r.evaluations,
        converged: r.converged,
        trace: r.trace,
    };
    let theta = ThetaVector::from_slice(&r.x)?;
    finish(
        &eta,
        &eta_hat,
        series.len(),
        theta,
        r.value,
        vec![rep],
        opts,
    )
}
