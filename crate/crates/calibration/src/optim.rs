//! Derivative-free minimisers: Nelder–Mead with an extended-value barrier,
//! and differential evolution (rand/1/bin).

use crate::error::{CalibError, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadOptions {
    /// Stop when the largest vertex distance from the best vertex falls below this.
    pub x_tol: f64,
    /// Stop when `f_worst − f_best ≤ f_tol·|f_best|`.
    pub f_tol: f64,
    /// Iteration cap per run; `None` means `200·dim`.
    pub max_iter: Option<usize>,
    /// Relative size of the initial simplex; coordinates near zero get an absolute step.
    pub initial_step: f64,
    /// Fresh simplices started from the best point after convergence.
    pub restarts: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            x_tol: 1e-8,
            f_tol: 1e-10,
            max_iter: None,
            initial_step: 0.1,
            restarts: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Best value after each iteration (NM) or generation (DE).
    pub trace: Vec<f64>,
}

fn diameter(simplex: &[Vec<f64>]) -> f64 {
    let best = &simplex[0];
    simplex[1..]
        .iter()
        .map(|v| {
            v.iter()
                .zip(best)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

fn initial_simplex<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x0: &[f64],
    step: f64,
) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut simplex = vec![x0.to_vec()];
    let mut values = vec![f(x0)];
    for i in 0..x0.len() {
        let base = if x0[i].abs() > 0.05 {
            step * x0[i].abs()
        } else {
            0.5 * step
        };
        // flip or shrink the step until the vertex lies inside the feasible set
        let mut v = x0.to_vec();
        let mut fv = f64::INFINITY;
        for k in 0..20 {
            let h = base * 0.5f64.powi(k / 2) * if k % 2 == 0 { 1.0 } else { -1.0 };
            v[i] = x0[i] + h;
            fv = f(&v);
            if fv.is_finite() {
                break;
            }
        }
        simplex.push(v);
        values.push(fv);
    }
    (simplex, values)
}

/// Nelder–Mead with reflection 1, expansion 2, contraction ½ and shrink ½.
/// Infeasible points must evaluate to `+∞`.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    opts: &NelderMeadOptions,
) -> Result<OptimResult> {
    let n = x0.len();
    if n == 0 {
        return Err(CalibError::InvalidArgument("empty starting point".into()));
    }
    let f0 = f(x0);
    if !f0.is_finite() {
        return Err(CalibError::Domain("starting point is infeasible".into()));
    }
    let max_iter = opts.max_iter.unwrap_or(200 * n);
    let mut evaluations = 1;
    let mut counted = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        f(x)
    };
    let mut best = x0.to_vec();
    let mut best_f = f0;
    let mut iterations = 0;
    let mut trace = Vec::new();
    let mut converged = false;
    for run in 0..=opts.restarts {
        let (mut simplex, mut values) = initial_simplex(
            &mut |x: &[f64]| counted(x, &mut evaluations),
            &best,
            opts.initial_step,
        );
        let start_f = best_f;
        let mut run_converged = false;
        for _ in 0..max_iter {
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();
            let (fb, fw) = (values[0], values[n]);
            if diameter(&simplex) < opts.x_tol
                || (fw.is_finite() && fw - fb <= opts.f_tol * fb.abs())
            {
                run_converged = true;
                break;
            }
            iterations += 1;
            let centroid: Vec<f64> = (0..n)
                .map(|j| simplex[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[n])
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };
            let xr = along(1.0);
            let fr = counted(&xr, &mut evaluations);
            if fr < values[0] {
                let xe = along(2.0);
                let fe = counted(&xe, &mut evaluations);
                if fe < fr {
                    simplex[n] = xe;
                    values[n] = fe;
                } else {
                    simplex[n] = xr;
                    values[n] = fr;
                }
            } else if fr < values[n - 1] {
                simplex[n] = xr;
                values[n] = fr;
            } else {
                let (xc, fc) = if fr < values[n] {
                    let xc = along(0.5);
                    let fc = counted(&xc, &mut evaluations);
                    (xc, fc)
                } else {
                    let xc = along(-0.5);
                    let fc = counted(&xc, &mut evaluations);
                    (xc, fc)
                };
                if fc < fr.min(values[n]) {
                    simplex[n] = xc;
                    values[n] = fc;
                } else {
                    for i in 1..=n {
                        let xs: Vec<f64> = simplex[0]
                            .iter()
                            .zip(&simplex[i])
                            .map(|(b, v)| b + 0.5 * (v - b))
                            .collect();
                        values[i] = counted(&xs, &mut evaluations);
                        simplex[i] = xs;
                    }
                }
            }
            let ib = (0..=n)
                .min_by(|&a, &b| values[a].total_cmp(&values[b]))
                .unwrap();
            trace.push(values[ib]);
        }
        let ib = (0..=n)
            .min_by(|&a, &b| values[a].total_cmp(&values[b]))
            .unwrap();
        if values[ib] < best_f {
            best_f = values[ib];
            best = simplex[ib].clone();
        }
        converged = run_converged;
        // a restart that does not improve confirms the minimum
        if run > 0 && start_f - best_f <= opts.f_tol * best_f.abs() {
            break;
        }
        if !run_converged {
            break;
        }
    }
    Ok(OptimResult {
        x: best,
        value: best_f,
        iterations,
        evaluations,
        converged,
        trace,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeOptions {
    pub f: f64,
    pub cr: f64,
    /// Population per dimension.
    pub pop_per_dim: usize,
    pub generations: usize,
    pub seed: u64,
}

impl Default for DeOptions {
    fn default() -> Self {
        Self {
            f: 0.7,
            cr: 0.9,
            pop_per_dim: 15,
            generations: 500,
            seed: 0,
        }
    }
}

/// Differential evolution rand/1/bin inside the box `bounds`; trial vectors
/// are clipped to the box and then passed through `project`. `x0`, when
/// given, seeds one member of the initial population.
pub fn differential_evolution<F, P>(
    mut f: F,
    bounds: &[(f64, f64)],
    x0: Option<&[f64]>,
    mut project: P,
    opts: &DeOptions,
) -> Result<OptimResult>
where
    F: FnMut(&[f64]) -> f64,
    P: FnMut(&mut [f64]),
{
    let dim = bounds.len();
    if dim == 0 || bounds.iter().any(|(lo, hi)| !(lo < hi)) {
        return Err(CalibError::InvalidArgument(
            "empty or inverted bounds".into(),
        ));
    }
    let np = (opts.pop_per_dim * dim).max(4);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let clip = |x: &mut [f64]| {
        for (v, &(lo, hi)) in x.iter_mut().zip(bounds) {
            *v = v.clamp(lo, hi);
        }
    };
    let mut pop: Vec<Vec<f64>> = (0..np)
        .map(|_| {
            bounds
                .iter()
                .map(|&(lo, hi)| rng.random_range(lo..hi))
                .collect::<Vec<f64>>()
        })
        .collect();
    if let Some(x) = x0 {
        pop[0] = x.to_vec();
    }
    for p in pop.iter_mut() {
        clip(p);
        project(p);
    }
    let mut vals: Vec<f64> = pop.iter().map(|p| f(p)).collect();
    let mut evaluations = np;
    let mut trace = Vec::with_capacity(opts.generations);
    for _ in 0..opts.generations {
        for i in 0..np {
            let pick = |rng: &mut ChaCha8Rng, excl: &[usize]| loop {
                let r = rng.random_range(0..np);
                if !excl.contains(&r) {
                    break r;
                }
            };
            let r1 = pick(&mut rng, &[i]);
            let r2 = pick(&mut rng, &[i, r1]);
            let r3 = pick(&mut rng, &[i, r1, r2]);
            let jrand = rng.random_range(0..dim);
            let mut trial = pop[i].clone();
            for j in 0..dim {
                if j == jrand || rng.random::<f64>() < opts.cr {
                    trial[j] = pop[r1][j] + opts.f * (pop[r2][j] - pop[r3][j]);
                }
            }
            clip(&mut trial);
            project(&mut trial);
            let ft = f(&trial);
            evaluations += 1;
            if ft <= vals[i] {
                pop[i] = trial;
                vals[i] = ft;
            }
        }
        trace.push(vals.iter().cloned().fold(f64::INFINITY, f64::min));
    }
    let ib = (0..np)
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .unwrap();
    Ok(OptimResult {
        x: pop[ib].clone(),
        value: vals[ib],
        iterations: opts.generations,
        evaluations,
        converged: vals[ib].is_finite(),
        trace,
    })
}
