//! Run configuration: a TOML file with sections `[data]`, `[model]`, `[fit]`
//! and `[simulate]`. Unknown sections and keys are rejected.

use crate::error::{CliError, Result};
use calibration::{
    FitOptions, NelderMeadOptions, Sigma2Form, ThetaVector, WeightingPolicy, DEFAULT_LAGS,
};
use hetero_distributions::{Coupling, Density, FourierDensity, ParametricDensity, SingularBeta};
use hetero_process::ModelSpec;
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub data: DataConfig,
    pub model: Option<ModelConfig>,
    #[serde(default)]
    pub fit: FitConfig,
    #[serde(default)]
    pub simulate: SimulateConfig,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum AcfMethodConfig {
    #[default]
    Fft,
    Ma,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct DataConfig {
    pub input: Option<PathBuf>,
    /// Intraday `date,time,price` file used for the bubble split.
    pub prices: Option<PathBuf>,
    pub output: Option<PathBuf>,
    /// Density band CSV written by `fit`.
    pub band: Option<PathBuf>,
    /// Minimum spacing in seconds between intraday prices used for RV.
    pub min_interval: Option<u32>,
    pub lags: usize,
    /// Frequencies in the `spectrum` output.
    pub grid_points: usize,
    pub acf_method: AcfMethodConfig,
    /// FFT size for model autocovariances.
    pub fft_size: usize,
    /// MA truncation for model autocovariances.
    pub ma_terms: usize,
}

impl Default for DataConfig {
    fn default() -> Self {
        Self {
            input: None,
            prices: None,
            output: None,
            band: None,
            min_interval: None,
            lags: 100,
            grid_points: 512,
            acf_method: AcfMethodConfig::Fft,
            fft_size: 1 << 18,
            ma_terms: 1 << 16,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum DensityKind {
    #[default]
    Mixture,
    Fourier,
    Singular,
    BetaNegAlpha,
    StretchedBeta,
    Bell,
    PointMass,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum CouplingKind {
    #[default]
    Linear,
    Rational,
    Affine,
    PowerLaw,
}

/// Distribution of `φ` and the coupling `E[ψ|φ]`. Only the keys of the
/// chosen families are read.
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    #[serde(default)]
    pub density: DensityKind,
    #[serde(default)]
    pub a: Vec<f64>,
    #[serde(default)]
    pub b: Vec<f64>,
    pub w: Option<f64>,
    pub d: Option<f64>,
    /// Parameter of the Beta(−α, 1+α) density.
    pub exponent: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub bell_w: Option<f64>,
    pub bell_m: Option<f64>,
    pub bell_sigma: Option<f64>,
    /// Location of a point mass.
    pub at: Option<f64>,
    #[serde(default)]
    pub coupling: CouplingKind,
    pub alpha: Option<f64>,
    pub phibar: Option<f64>,
    pub beta: Option<f64>,
    pub sigma_eps: Option<f64>,
    pub mean_omega: Option<f64>,
}

fn need(v: Option<f64>, key: &str, family: &str) -> Result<f64> {
    v.ok_or_else(|| CliError::Config(format!("model.{key} is required for {family}")))
}

impl ModelConfig {
    pub fn density(&self) -> Result<Density> {
        Ok(match self.density {
            DensityKind::Mixture => Density::mixture(
                need(self.w, "w", "mixture")?,
                self.a.clone(),
                self.b.clone(),
                need(self.d, "d", "mixture")?,
            )?,
            DensityKind::Fourier => {
                Density::Fourier(FourierDensity::new(self.a.clone(), self.b.clone())?)
            }
            DensityKind::Singular => {
                Density::Singular(SingularBeta::new(need(self.d, "d", "singular")?)?)
            }
            DensityKind::BetaNegAlpha => {
                Density::beta_neg_alpha(need(self.exponent, "exponent", "beta_neg_alpha")?)
            }
            DensityKind::StretchedBeta => Density::stretched_beta(
                need(self.p, "p", "stretched_beta")?,
                need(self.q, "q", "stretched_beta")?,
            ),
            DensityKind::Bell => Density::Parametric(ParametricDensity::BellMixture {
                p: need(self.p, "p", "bell")?,
                q: need(self.q, "q", "bell")?,
                w: need(self.bell_w, "bell_w", "bell")?,
                m: need(self.bell_m, "bell_m", "bell")?,
                sigma: need(self.bell_sigma, "bell_sigma", "bell")?,
            }),
            DensityKind::PointMass => Density::PointMass {
                at: need(self.at, "at", "point_mass")?,
            },
        })
    }

    pub fn coupling(&self) -> Result<Coupling> {
        Ok(match self.coupling {
            CouplingKind::Linear => Coupling::Linear {
                alpha: need(self.alpha, "alpha", "linear coupling")?,
            },
            CouplingKind::Rational => Coupling::Rational,
            CouplingKind::Affine => Coupling::Affine {
                alpha: need(self.alpha, "alpha", "affine coupling")?,
                phibar: need(self.phibar, "phibar", "affine coupling")?,
            },
            CouplingKind::PowerLaw => Coupling::PowerLaw {
                beta: need(self.beta, "beta", "power_law coupling")?,
            },
        })
    }

    pub fn spec(&self) -> Result<ModelSpec> {
        let m = ModelSpec::new(
            self.density()?,
            self.coupling()?,
            self.sigma_eps.unwrap_or(1.0),
        )?;
        Ok(m.with_mean_omega(self.mean_omega.unwrap_or(0.0)))
    }

    /// θ for a mixture density with linear coupling, the estimated family.
    pub fn theta(&self) -> Result<ThetaVector> {
        if self.density != DensityKind::Mixture || self.coupling != CouplingKind::Linear {
            return Err(CliError::Config(
                "θ needs density = \"mixture\" and coupling = \"linear\"".into(),
            ));
        }
        let t = ThetaVector::new(
            self.a.clone(),
            self.b.clone(),
            need(self.alpha, "alpha", "linear coupling")?,
            need(self.w, "w", "mixture")?,
            self.sigma_eps.unwrap_or(1.0),
            need(self.d, "d", "mixture")?,
        )?;
        t.check()?;
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum WeightingConfig {
    Identity,
    #[default]
    Sigma2,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum FormConfig {
    #[default]
    Bartlett,
    Shifted,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum OptimizerConfig {
    #[default]
    NelderMead,
    De,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct FitConfig {
    pub q: usize,
    pub lags: usize,
    pub weighting: WeightingConfig,
    pub form: FormConfig,
    pub optimizer: OptimizerConfig,
    pub seed: u64,
    pub generations: usize,
    pub max_iter: Option<usize>,
    pub restarts: usize,
    /// Confidence level of the density band.
    pub level: f64,
    pub band_points: usize,
    /// When non-empty, `L` is re-chosen among these at the first estimate.
    pub lag_candidates: Vec<usize>,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            q: 1,
            lags: DEFAULT_LAGS,
            weighting: WeightingConfig::Sigma2,
            form: FormConfig::Bartlett,
            optimizer: OptimizerConfig::NelderMead,
            seed: 0,
            generations: 500,
            max_iter: None,
            restarts: NelderMeadOptions::default().restarts,
            level: 0.95,
            band_points: 201,
            lag_candidates: Vec::new(),
        }
    }
}

impl FitConfig {
    pub fn options(&self, lags: usize) -> FitOptions {
        FitOptions {
            l: lags,
            weighting: match self.weighting {
                WeightingConfig::Identity => WeightingPolicy::Identity,
                WeightingConfig::Sigma2 => WeightingPolicy::Sigma2,
            },
            form: match self.form {
                FormConfig::Bartlett => Sigma2Form::Bartlett,
                FormConfig::Shifted => Sigma2Form::Shifted,
            },
            nm: NelderMeadOptions {
                max_iter: self.max_iter,
                restarts: self.restarts,
                ..NelderMeadOptions::default()
            },
            skip_covariance: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SimulationMode {
    #[default]
    Aggregate,
    Panel,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateConfig {
    pub t: usize,
    pub seed: u64,
    pub burn_in: usize,
    pub mode: SimulationMode,
    pub agents: usize,
    /// Standard deviation of the idiosyncratic agent noise.
    pub eta_scale: f64,
    pub replications: usize,
    /// Worker threads for `replicate`.
    pub jobs: usize,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        Self {
            t: 4000,
            seed: 0,
            burn_in: 0,
            mode: SimulationMode::Aggregate,
            agents: 10_000,
            eta_scale: 0.0,
            replications: 100,
            jobs: 1,
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// `load` when a path is given, defaults otherwise.
    pub fn load_or_default(path: Option<&Path>) -> Result<Self> {
        path.map_or_else(|| Ok(Self::default()), Self::load)
    }

    pub fn model(&self) -> Result<&ModelConfig> {
        self.model
            .as_ref()
            .ok_or_else(|| CliError::Config("a [model] section is required".into()))
    }
}
