//! Sample paths: the n → ∞ aggregate through its MA(∞) filter, and a finite
//! panel of agents iterated directly.

use crate::error::{ProcessError, Result};
use crate::ma::ma_coefficients_fast;
use crate::model::{ModelSpec, MEAN_C};
use crate::series;
use hetero_distributions::sample_phi_psi;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex64;
use std::f64::consts::PI;
use volatility_core::LogVolSeries;

/// Smallest MA truncation used by [`simulate_aggregate`].
pub const MIN_TRUNCATION: usize = 10_000;

#[derive(Debug, Clone)]
pub struct AggregateSimulation {
    pub series: LogVolSeries,
    /// MA truncation K.
    pub truncation: usize,
    /// `σ_ε² Σ_{k>K} β̃_k²`, the variance left out by the truncation.
    pub truncation_bias: f64,
}

fn normals(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

/// `ω_t = ω̄ + E[c] σ_ε Σ_{k≤K} β̃_k ε_{t−k}` with Gaussian ε and
/// `K = max(10·T, 10⁴)`.
pub fn simulate_aggregate(
    model: &ModelSpec,
    t: usize,
    burn_in: usize,
    seed: u64,
) -> Result<AggregateSimulation> {
    if t == 0 {
        return Err(ProcessError::InvalidArgument("T must be at least 1".into()));
    }
    let k = (10 * t).max(MIN_TRUNCATION);
    let sigma = MEAN_C * model.sigma_eps;
    if sigma == 0.0 {
        return Ok(AggregateSimulation {
            series: LogVolSeries::from_values(vec![model.mean_omega; t]),
            truncation: k,
            truncation_bias: 0.0,
        });
    }
    let ma = ma_coefficients_fast(model, k)?.with_tail(model);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps = normals(&mut rng, k + burn_in + t);
    let x = series::multiply(&ma.beta_tilde, &eps, eps.len());
    let omega = x[k + burn_in..]
        .iter()
        .map(|v| model.mean_omega + sigma * v)
        .collect();
    Ok(AggregateSimulation {
        series: LogVolSeries::from_values(omega),
        truncation: k,
        truncation_bias: sigma * sigma * ma.truncation_bound(),
    })
}

/// Agents of the recursion `X̂_{i,t} = φᵢX̂_{i,t−1} + ψᵢX̄_{t−1} + cᵢε_t + η_{i,t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentPanel {
    pub n: usize,
    pub phi: Vec<f64>,
    pub psi: Vec<f64>,
    pub c: Vec<f64>,
    /// σ_η
    pub eta_scale: f64,
    /// X̂_{i,t} at the last simulated date.
    pub state: Vec<f64>,
    /// Draws discarded because the panel was explosive.
    pub redraws: usize,
    /// Factor applied to ψ to pull the spectral radius below one.
    pub psi_rescale: Option<f64>,
}

/// Panels smaller than this are redrawn when explosive, larger ones rescaled.
pub const REDRAW_LIMIT_N: usize = 500;
pub const MAX_REDRAWS: usize = 100;

impl AgentPanel {
    pub fn new(phi: Vec<f64>, psi: Vec<f64>, c: Vec<f64>, eta_scale: f64) -> Result<Self> {
        let n = phi.len();
        if n == 0 || psi.len() != n || c.len() != n {
            return Err(ProcessError::InvalidArgument(format!(
                "panel vectors must be non-empty and equal in length (φ {n}, ψ {}, c {})",
                psi.len(),
                c.len()
            )));
        }
        if !(eta_scale >= 0.0) {
            return Err(ProcessError::InvalidArgument(format!(
                "σ_η = {eta_scale} must be nonnegative"
            )));
        }
        Ok(Self {
            n,
            phi,
            psi,
            c,
            eta_scale,
            state: vec![0.0; n],
            redraws: 0,
            psi_rescale: None,
        })
    }

    /// Draws n agents from the model with `cᵢ = E[c] = 1`. Explosive draws are
    /// redrawn (n < 500) or have ψ shrunk by `0.99/radius` (n ≥ 500).
    pub fn draw(model: &ModelSpec, n: usize, eta_scale: f64, seed: u64) -> Result<Self> {
        let make = |s: u64| -> Result<Self> {
            let pairs = sample_phi_psi(&model.density, &model.coupling, n, s)?;
            let (phi, psi) = pairs.into_iter().unzip();
            Self::new(phi, psi, vec![MEAN_C; n], eta_scale)
        };
        let mut panel = make(seed)?;
        if n < REDRAW_LIMIT_N {
            let mut tries = 0;
            while panel.unstable_roots() > 0 {
                tries += 1;
                if tries > MAX_REDRAWS {
                    return Err(ProcessError::NonStationary(format!(
                        "spectral radius ≥ 1 after {MAX_REDRAWS} redraws"
                    )));
                }
                panel = make(seed.wrapping_add(tries as u64 * 0x9E37_79B9))?;
            }
            panel.redraws = tries;
        } else {
            let mut total = 1.0;
            for _ in 0..50 {
                if panel.unstable_roots() == 0 {
                    break;
                }
                let s = 0.99 / panel.spectral_radius();
                panel.psi.iter_mut().for_each(|p| *p *= s);
                total *= s;
            }
            if panel.unstable_roots() > 0 {
                return Err(ProcessError::NonStationary(
                    "rescaling ψ did not stabilise the panel".into(),
                ));
            }
            if total != 1.0 {
                panel.psi_rescale = Some(total);
            }
        }
        Ok(panel)
    }

    /// `1 − (1/n) Σ ψᵢ/(λ − φᵢ)`; its zeros are the eigenvalues of
    /// `A = D + (1/n)ψ1′` other than the φᵢ.
    fn secular(&self, lambda: Complex64) -> Complex64 {
        let s: Complex64 = self
            .phi
            .iter()
            .zip(&self.psi)
            .map(|(&f, &p)| p / (lambda - f))
            .sum();
        Complex64::new(1.0, 0.0) - s / self.n as f64
    }

    /// Number of eigenvalues of A on or outside the unit circle, as minus the
    /// winding number of the secular function around it.
    pub fn unstable_roots(&self) -> usize {
        if self.phi.iter().any(|f| f.abs() >= 1.0) {
            return usize::MAX;
        }
        let at = |th: f64| self.secular(Complex64::from_polar(1.0, th));
        let m = 4096;
        let mut total = 0.0;
        let mut prev = at(0.0);
        for j in 1..=m {
            let th = 2.0 * PI * j as f64 / m as f64;
            let next = at(th);
            total += self.arg_change(th - 2.0 * PI / m as f64, th, prev, next, 0);
            prev = next;
        }
        let wind = (total / (2.0 * PI)).round() as i64;
        (-wind).max(0) as usize
    }

    fn arg_change(&self, a: f64, b: f64, fa: Complex64, fb: Complex64, depth: u32) -> f64 {
        let d = (fb / fa).arg();
        if d.abs() < 0.3 || depth > 40 {
            return d;
        }
        let mid = 0.5 * (a + b);
        let fm = self.secular(Complex64::from_polar(1.0, mid));
        self.arg_change(a, mid, fa, fm, depth + 1) + self.arg_change(mid, b, fm, fb, depth + 1)
    }

    /// Spectral radius of A by power iteration on `x ↦ Dx + ψ·mean(x)`.
    pub fn spectral_radius(&self) -> f64 {
        let mut x: Vec<f64> = (0..self.n)
            .map(|i| 1.0 + 0.37 * ((i * 7919) % 101) as f64 / 101.0)
            .collect();
        let mut log_growth = 0.0;
        let (warm, steps) = (500, 2000);
        for it in 0..warm + steps {
            let mean = x.iter().sum::<f64>() / self.n as f64;
            for ((xi, &f), &p) in x.iter_mut().zip(&self.phi).zip(&self.psi) {
                *xi = f * *xi + p * mean;
            }
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                return 0.0;
            }
            x.iter_mut().for_each(|v| *v /= norm);
            if it >= warm {
                log_growth += norm.ln();
            }
        }
        (log_growth / steps as f64).exp()
    }
}

#[derive(Debug, Clone)]
pub struct PanelSimulation {
    /// ω̄ + X̄_{n,t}
    pub series: LogVolSeries,
    /// X̂_{i,t} for the first agents, one vector per agent, when requested.
    pub trace: Option<Vec<Vec<f64>>>,
}

/// Iterates the panel from its current state. ε_t and each agent's η draw
/// from separate ChaCha streams of `seed`, so results do not depend on the
/// order agents are updated in.
pub fn simulate_panel(
    panel: &mut AgentPanel,
    model: &ModelSpec,
    t: usize,
    burn_in: usize,
    seed: u64,
    trace_agents: usize,
) -> Result<PanelSimulation> {
    if t == 0 {
        return Err(ProcessError::InvalidArgument("T must be at least 1".into()));
    }
    if panel.unstable_roots() > 0 {
        return Err(ProcessError::NonStationary(
            "panel spectral radius is at least 1".into(),
        ));
    }
    let n = panel.n;
    let mut eps_rng = ChaCha8Rng::seed_from_u64(seed);
    eps_rng.set_stream(0);
    let mut agent_rngs: Vec<ChaCha8Rng> = if panel.eta_scale > 0.0 {
        (0..n)
            .map(|i| {
                let mut r = ChaCha8Rng::seed_from_u64(seed);
                r.set_stream(i as u64 + 1);
                r
            })
            .collect()
    } else {
        Vec::new()
    };
    let keep = trace_agents.min(n);
    let mut trace = vec![Vec::with_capacity(t); keep];
    let mut out = Vec::with_capacity(t);
    let mut xbar = panel.state.iter().sum::<f64>() / n as f64;
    for step in 0..burn_in + t {
        let z: f64 = StandardNormal.sample(&mut eps_rng);
        let e = model.sigma_eps * z;
        let mut sum = 0.0;
        for i in 0..n {
            let mut v = panel.phi[i] * panel.state[i] + panel.psi[i] * xbar + panel.c[i] * e;
            if let Some(r) = agent_rngs.get_mut(i) {
                let z: f64 = StandardNormal.sample(r);
                v += panel.eta_scale * z;
            }
            panel.state[i] = v;
            sum += v;
        }
        xbar = sum / n as f64;
        if step >= burn_in {
            out.push(model.mean_omega + xbar);
            for (i, tr) in trace.iter_mut().enumerate() {
                tr.push(panel.state[i]);
            }
        }
    }
    Ok(PanelSimulation {
        series: LogVolSeries::from_values(out),
        trace: (keep > 0).then_some(trace),
    })
}
