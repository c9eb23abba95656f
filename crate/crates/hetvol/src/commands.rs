//! The work behind each subcommand, on data already in memory. The binary
//! only resolves paths, reads inputs and writes the returned tables.

use crate::config::{AcfMethodConfig, FitConfig, OptimizerConfig, SimulateConfig, SimulationMode};
use crate::csvio::{fmt_num, Table};
use crate::error::{CliError, Result};
use calibration::{
    de_fit, density_confidence_band, format_estimate, optimal_l, split_at_peak, step_by_step_fit,
    DeOptions, EstimationResult, ThetaVector,
};
use hetero_process::{
    acf_via_fft, acf_via_ma, ma_coefficients_fast, simulate_aggregate, simulate_panel,
    spectral_density, AgentPanel, ModelSpec,
};
use semiparam::{gph_estimate, rs_hurst};
use std::f64::consts::PI;
use volatility_core::{build_rv_series, sample_autocov, IntradaySeries, LogVolSeries, RejectedDay};

#[derive(Debug, Clone)]
pub struct RvReport {
    pub table: Table,
    pub rejected: Vec<RejectedDay>,
    pub mean_n_obs: f64,
    pub notes: Vec<String>,
}

/// `date,rv,n_obs,omega` per accepted day; days with zero variance get `ω = −∞`.
pub fn rv(series: &IntradaySeries, min_interval: Option<u32>) -> RvReport {
    let (rv, rejected) = build_rv_series(series, min_interval);
    let mut table = Table::new(&["date", "rv", "n_obs", "omega"]);
    let mut zero = 0;
    for ((d, &v), &n) in rv.dates.iter().zip(&rv.rv).zip(&rv.n_obs) {
        zero += (v == 0.0) as usize;
        table.push(vec![
            d.clone(),
            fmt_num(v),
            n.to_string(),
            fmt_num(0.5 * v.ln()),
        ]);
    }
    let mean_n_obs = if rv.n_obs.is_empty() {
        0.0
    } else {
        rv.n_obs.iter().sum::<usize>() as f64 / rv.n_obs.len() as f64
    };
    let mut notes = vec![format!(
        "{} days accepted, {} rejected, mean n_obs {:.1}",
        rv.dates.len(),
        rejected.len(),
        mean_n_obs
    )];
    notes.extend(rejected.iter().map(|r| format!("warning: {}", r.reason)));
    if zero > 0 {
        notes.push(format!(
            "warning: {zero} days with zero realized variance have omega = -inf"
        ));
    }
    RvReport {
        table,
        rejected,
        mean_n_obs,
        notes,
    }
}

fn acf_rows(gamma: &[f64]) -> Table {
    let mut t = Table::new(&["h", "gamma", "rho"]);
    for (h, g) in gamma.iter().enumerate() {
        let rho = if gamma[0] > 0.0 { g / gamma[0] } else { 0.0 };
        t.push(vec![h.to_string(), fmt_num(*g), fmt_num(rho)]);
    }
    t
}

/// Sample autocovariances and autocorrelations for lags `0..=lags`.
pub fn sample_acf_table(x: &[f64], lags: usize) -> Result<Table> {
    if lags >= x.len() {
        return Err(CliError::Data(format!(
            "{lags} lags need more than {} observations",
            x.len()
        )));
    }
    Ok(acf_rows(&sample_autocov(x, lags)?))
}

/// Model autocovariances by the spectral (FFT) or MA-truncation route.
pub fn model_acf_table(
    model: &ModelSpec,
    lags: usize,
    method: AcfMethodConfig,
    fft_size: usize,
    ma_terms: usize,
) -> Result<(Table, Vec<String>)> {
    let acf = match method {
        AcfMethodConfig::Fft => acf_via_fft(model, fft_size, lags)?,
        AcfMethodConfig::Ma => {
            if ma_terms <= lags {
                return Err(CliError::Config(format!(
                    "data.ma_terms = {ma_terms} must exceed {lags} lags"
                )));
            }
            acf_via_ma(
                &ma_coefficients_fast(model, ma_terms)?,
                model.sigma_eps,
                lags,
            )
        }
    };
    let mut notes = acf.warnings.clone();
    notes.push(format!(
        "estimated absolute error on gamma: {:.3e}",
        acf.error_bound
    ));
    Ok((acf_rows(&acf.gamma), notes))
}

/// `f_X(λ_j)` at `λ_j = πj/points`, `j = 1..=points`; λ = 0 is left out
/// because the density diverges there under long memory.
pub fn spectrum_table(model: &ModelSpec, points: usize) -> Result<Table> {
    if points == 0 {
        return Err(CliError::Config("data.grid_points must be positive".into()));
    }
    let grid: Vec<f64> = (1..=points)
        .map(|j| PI * j as f64 / points as f64)
        .collect();
    let f = spectral_density(model, &grid)?;
    let mut t = Table::new(&["lambda", "f_x"]);
    for (l, v) in grid.iter().zip(&f) {
        t.push(vec![fmt_num(*l), fmt_num(*v)]);
    }
    Ok(t)
}

/// A log-volatility path from the model, aggregate or agent panel.
pub fn simulate(model: &ModelSpec, sim: &SimulateConfig) -> Result<(LogVolSeries, Vec<String>)> {
    let mut notes = vec![format!("seed {}", sim.seed)];
    let series = match sim.mode {
        SimulationMode::Aggregate => {
            let s = simulate_aggregate(model, sim.t, sim.burn_in, sim.seed)?;
            notes.push(format!(
                "MA truncation K = {}, omitted variance {:.3e}",
                s.truncation, s.truncation_bias
            ));
            s.series
        }
        SimulationMode::Panel => {
            let mut panel = AgentPanel::draw(model, sim.agents, sim.eta_scale, sim.seed)?;
            if panel.redraws > 0 {
                notes.push(format!(
                    "panel redrawn {} times to remove explosive roots",
                    panel.redraws
                ));
            }
            if let Some(s) = panel.psi_rescale {
                notes.push(format!(
                    "warning: psi rescaled by {s:.6} to make the panel stationary"
                ));
            }
            simulate_panel(&mut panel, model, sim.t, sim.burn_in, sim.seed, 0)?.series
        }
    };
    Ok((series, notes))
}

#[derive(Debug, Clone)]
pub struct FitReport {
    pub result: EstimationResult,
    /// `parameter,estimate,se`.
    pub table: Table,
    /// `x,f,lo,hi`, absent without a covariance.
    pub band: Option<Table>,
    pub notes: Vec<String>,
}

fn fit_once(x: &[f64], cfg: &FitConfig, lags: usize) -> Result<EstimationResult> {
    if x.len() <= lags {
        return Err(CliError::Data(format!(
            "T = {} must exceed L = {lags}",
            x.len()
        )));
    }
    if lags < 2 * cfg.q + 4 {
        return Err(CliError::Config(format!(
            "fit.lags = {lags} below 2q+4 = {}",
            2 * cfg.q + 4
        )));
    }
    let opts = cfg.options(lags);
    Ok(match cfg.optimizer {
        OptimizerConfig::NelderMead => step_by_step_fit(x, cfg.q, &opts)?,
        OptimizerConfig::De => {
            let de = DeOptions {
                generations: cfg.generations,
                seed: cfg.seed,
                ..DeOptions::default()
            };
            de_fit(x, cfg.q, &opts, &de)?
        }
    })
}

/// The configured estimator, with `L` re-chosen when candidates are given.
pub fn estimate(x: &[f64], cfg: &FitConfig) -> Result<EstimationResult> {
    let first = fit_once(x, cfg, cfg.lags)?;
    let cands: Vec<usize> = cfg
        .lag_candidates
        .iter()
        .copied()
        .filter(|&l| l < x.len() && l >= 2 * cfg.q + 4)
        .collect();
    if cands.is_empty() {
        return Ok(first);
    }
    let opts = cfg.options(cfg.lags);
    let choice = optimal_l(&first.theta_hat, &cands, opts.weighting, opts.form)?;
    if choice.l_star == first.l_used {
        Ok(first)
    } else {
        fit_once(x, cfg, choice.l_star)
    }
}

/// Fit, parameter table, density band and a summary.
pub fn fit(series: &LogVolSeries, cfg: &FitConfig) -> Result<FitReport> {
    let r = estimate(&series.omega, cfg)?;
    let mut table = Table::new(&["parameter", "estimate", "se"]);
    for ((name, v), se) in ThetaVector::names(r.theta_hat.q())
        .iter()
        .zip(r.theta_hat.to_vec())
        .zip(&r.se)
    {
        table.push(vec![name.clone(), fmt_num(v), fmt_num(*se)]);
    }
    let mut notes = vec![
        format!("T = {}, L = {}, q = {}", r.t, r.l_used, r.theta_hat.q()),
        format!("d = {}", r.d_with_se()),
        format!("objective {:.6e}", r.objective_value),
    ];
    for s in &r.stages {
        notes.push(format!(
            "stage q={} {:?}: objective {:.6e}, {} iterations, {}",
            s.q,
            s.weighting,
            s.objective,
            s.iterations,
            if s.converged {
                "converged"
            } else {
                "iteration limit"
            }
        ));
    }
    if !r.boundary.is_empty() {
        notes.push(format!(
            "warning: estimate on the boundary ({}); standard errors are not asymptotically valid",
            r.boundary.join(", ")
        ));
    }
    if let Some(e) = &r.covariance_error {
        notes.push(format!("warning: no covariance: {e}"));
    }
    let band = match &r.a_l {
        Some(a) if cfg.band_points >= 2 => {
            let n = cfg.band_points;
            let xs: Vec<f64> = (0..n)
                .map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64)
                .collect();
            let b = density_confidence_band(&r.theta_hat, a, r.t, &xs, cfg.level)?;
            let mut t = Table::new(&["x", "f", "lo", "hi"]);
            for i in 0..n {
                t.push(vec![
                    fmt_num(b.x[i]),
                    fmt_num(b.f[i]),
                    fmt_num(b.lo[i]),
                    fmt_num(b.hi[i]),
                ]);
            }
            Some(t)
        }
        _ => None,
    };
    Ok(FitReport {
        result: r,
        table,
        band,
        notes,
    })
}

/// One row `asset,d_model,se_model,d_gph,se_gph,d_hurst`.
pub fn semiparam_row(
    asset: &str,
    x: &[f64],
    cfg: &FitConfig,
) -> Result<(Vec<String>, Vec<String>)> {
    let g = gph_estimate(x, None)?;
    let h = rs_hurst(x, None)?;
    let mut notes = vec![format!("{asset}: GPH with m = {}, R/S H = {:.4}", g.m, h.h)];
    if h.trend_dominated {
        notes.push(format!(
            "warning: {asset}: R/S exponent {:.3} indicates a trend",
            h.h
        ));
    }
    let (d, se) = match estimate(x, cfg) {
        Ok(r) => (r.theta_hat.d, r.se_d()),
        Err(e) => {
            notes.push(format!("warning: {asset}: model fit failed: {e}"));
            (f64::NAN, f64::NAN)
        }
    };
    Ok((
        vec![
            asset.to_string(),
            fmt_num(d),
            fmt_num(se),
            fmt_num(g.d_gph),
            fmt_num(g.se),
            fmt_num(h.d_hurst),
        ],
        notes,
    ))
}

/// Last price of each day.
pub fn daily_close(series: &IntradaySeries) -> Vec<(String, f64)> {
    series
        .days
        .iter()
        .filter_map(|d| {
            d.obs
                .iter()
                .max_by_key(|o| o.0)
                .map(|o| (d.date.clone(), o.1))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct BubbleReport {
    /// `parameter,whole,before,after`.
    pub table: Table,
    pub peak_date: String,
    /// Fits of the whole series and the two segments, `None` when skipped.
    pub fits: [Option<EstimationResult>; 3],
    pub notes: Vec<String>,
}

/// Fits on the whole series and on both sides of the price peak. Segments
/// shorter than `4L` are skipped with the reason in the table.
pub fn bubble(
    prices: &IntradaySeries,
    series: &LogVolSeries,
    cfg: &FitConfig,
) -> Result<BubbleReport> {
    let close = daily_close(prices);
    let levels: Vec<f64> = series
        .dates
        .iter()
        .map(|d| {
            close
                .iter()
                .find(|c| &c.0 == d)
                .map(|c| c.1)
                .ok_or_else(|| CliError::Data(format!("no price for log-vol date {d}")))
        })
        .collect::<Result<_>>()?;
    let split = split_at_peak(&levels).ok_or_else(|| CliError::Data("empty series".into()))?;
    let peak_date = series.dates[split.peak].clone();
    let names = ThetaVector::names(cfg.q.max(1));
    let segments = [
        ("whole", 0..levels.len()),
        ("before", split.pre.clone()),
        ("after", split.post.clone()),
    ];
    let mut notes = vec![format!("price peak on {peak_date} (index {})", split.peak)];
    let mut cols: Vec<Vec<String>> = Vec::new();
    let mut fits: [Option<EstimationResult>; 3] = [None, None, None];
    for (k, (label, range)) in segments.iter().enumerate() {
        let n = range.len();
        let min = 4 * cfg.lags;
        let col = if n < min {
            notes.push(format!("{label}: skipped, {n} observations < 4L = {min}"));
            vec![format!("skipped: {n} < 4L = {min}"); names.len()]
        } else {
            match estimate(&series.omega[range.clone()], cfg) {
                Ok(r) => {
                    notes.push(format!(
                        "{label}: T = {n}, d = {}, objective {:.4e}",
                        r.d_with_se(),
                        r.objective_value
                    ));
                    let col = r
                        .theta_hat
                        .to_vec()
                        .iter()
                        .zip(&r.se)
                        .map(|(v, s)| format_estimate(*v, *s))
                        .collect();
                    fits[k] = Some(r);
                    col
                }
                Err(e) => {
                    notes.push(format!("warning: {label}: fit failed: {e}"));
                    vec![format!("skipped: {e}"); names.len()]
                }
            }
        };
        cols.push(col);
    }
    let mut table = Table::new(&["parameter", "whole", "before", "after"]);
    for (i, name) in names.iter().enumerate() {
        table.push(vec![
            name.clone(),
            cols[0][i].clone(),
            cols[1][i].clone(),
            cols[2][i].clone(),
        ]);
    }
    Ok(BubbleReport {
        table,
        peak_date,
        fits,
        notes,
    })
}

/// Simulates `sim.replications` aggregate paths with seeds `sim.seed + i`
/// and applies `work` to each, on `sim.jobs` threads. Results come back in
/// seed order whatever the scheduling.
pub fn run_replications<R, F>(
    model: &ModelSpec,
    sim: &SimulateConfig,
    work: F,
) -> Vec<(u64, Result<R>)>
where
    R: Send,
    F: Fn(&LogVolSeries) -> Result<R> + Sync,
{
    let n = sim.replications;
    let jobs = sim.jobs.clamp(1, n.max(1));
    let one = |i: usize| -> (u64, Result<R>) {
        let seed = sim.seed + i as u64;
        let r = simulate_aggregate(model, sim.t, sim.burn_in, seed)
            .map_err(CliError::from)
            .and_then(|s| work(&s.series));
        (seed, r)
    };
    let mut out: Vec<Option<(u64, Result<R>)>> = (0..n).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let one = &one;
                scope.spawn(move || {
                    (w..n)
                        .step_by(jobs)
                        .map(|i| (i, one(i)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("replication worker panicked") {
                out[i] = Some(r);
            }
        }
    });
    out.into_iter()
        .map(|r| r.expect("every replication ran"))
        .collect()
}

#[derive(Debug, Clone)]
pub struct ReplicateReport {
    pub table: Table,
    pub covered_2se: usize,
    pub covered_1_96se: usize,
    pub failed: usize,
    pub notes: Vec<String>,
}

/// Monte-Carlo recovery of `d_true` by the configured estimator.
pub fn replicate(
    model: &ModelSpec,
    d_true: f64,
    fit_cfg: &FitConfig,
    sim: &SimulateConfig,
) -> ReplicateReport {
    let runs = run_replications(model, sim, |s| estimate(&s.omega, fit_cfg));
    let mut table = Table::new(&[
        "seed",
        "d_hat",
        "se_d",
        "covered_2se",
        "covered_1_96se",
        "objective",
        "converged",
        "boundary",
    ]);
    let (mut c2, mut c196, mut failed) = (0, 0, 0);
    let mut notes = Vec::new();
    for (seed, r) in runs {
        match r {
            Ok(r) => {
                let (d, se) = (r.theta_hat.d, r.se_d());
                let in2 = (d - d_true).abs() <= 2.0 * se;
                let in196 = (d - d_true).abs() <= 1.96 * se;
                c2 += in2 as usize;
                c196 += in196 as usize;
                table.push(vec![
                    seed.to_string(),
                    fmt_num(d),
                    fmt_num(se),
                    (in2 as u8).to_string(),
                    (in196 as u8).to_string(),
                    fmt_num(r.objective_value),
                    (r.converged() as u8).to_string(),
                    r.boundary.join(";"),
                ]);
            }
            Err(e) => {
                failed += 1;
                notes.push(format!("warning: seed {seed}: {e}"));
                let nan = fmt_num(f64::NAN);
                table.push(vec![
                    seed.to_string(),
                    nan.clone(),
                    nan.clone(),
                    "0".into(),
                    "0".into(),
                    nan,
                    "0".into(),
                    format!("error: {e}"),
                ]);
            }
        }
    }
    let n = sim.replications;
    notes.insert(
        0,
        format!("d within 2 se in {c2}/{n}, within 1.96 se in {c196}/{n}, {failed} failed"),
    );
    ReplicateReport {
        table,
        covered_2se: c2,
        covered_1_96se: c196,
        failed,
        notes,
    }
}
