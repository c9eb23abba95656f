//! The minimum-distance criterion `[η̂ − η(θ)]′ W⁻¹ [η̂ − η(θ)]`.

use crate::error::{CalibError, Result};
use crate::spectral::EtaModel;
use crate::theta::ThetaVector;
use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use volatility_core::sample_autocov;

/// `(γ̂(h) − γ̂(0))_{h=1..L}` with the `1/T` autocovariance convention.
pub fn sample_eta(series: &[f64], l: usize) -> Result<Vec<f64>> {
    if l >= series.len() {
        return Err(CalibError::InvalidArgument(format!(
            "L = {l} must be below T = {}",
            series.len()
        )));
    }
    let g = sample_autocov(series, l)?;
    Ok(g[1..].iter().map(|v| v - g[0]).collect())
}

/// A symmetric positive definite `W`, applied through its Cholesky factor.
#[derive(Debug, Clone)]
pub struct Weight {
    matrix: DMatrix<f64>,
    chol: Option<Cholesky<f64, Dyn>>,
}

impl Weight {
    pub fn identity(l: usize) -> Self {
        Self {
            matrix: DMatrix::identity(l, l),
            chol: None,
        }
    }

    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(CalibError::InvalidArgument(
                "weight matrix is not square".into(),
            ));
        }
        let asym = (&matrix - matrix.transpose()).amax();
        if asym > 1e-10 * matrix.amax() {
            return Err(CalibError::InvalidArgument(format!(
                "weight matrix is not symmetric ({asym:.2e})"
            )));
        }
        let chol = Cholesky::new(matrix.clone()).ok_or(CalibError::NotPositiveDefinite)?;
        Ok(Self {
            matrix,
            chol: Some(chol),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.chol.is_none()
    }

    /// `W⁻¹ x`.
    pub fn solve(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        match &self.chol {
            None => x.clone(),
            Some(c) => c.solve(x),
        }
    }

    /// `x′ W⁻¹ x`.
    pub fn quadratic(&self, x: &[f64]) -> f64 {
        match &self.chol {
            None => x.iter().map(|v| v * v).sum(),
            Some(c) => {
                // ‖L⁻¹x‖² with W = LL′
                let mut y = DVector::from_column_slice(x);
                c.l_dirty().solve_lower_triangular_mut(&mut y);
                y.norm_squared()
            }
        }
    }
}

/// `[η̂ − η]′ W⁻¹ [η̂ − η]`.
pub fn objective(model_eta: &[f64], sample_eta: &[f64], weight: &Weight) -> Result<f64> {
    if model_eta.len() != sample_eta.len() || weight.dim() != sample_eta.len() {
        return Err(CalibError::InvalidArgument(format!(
            "dimensions differ: model {}, sample {}, weight {}",
            model_eta.len(),
            sample_eta.len(),
            weight.dim()
        )));
    }
    let diff: Vec<f64> = sample_eta
        .iter()
        .zip(model_eta)
        .map(|(a, b)| a - b)
        .collect();
    Ok(weight.quadratic(&diff))
}

/// The criterion as a function of θ, with `+∞` outside Θ.
#[derive(Debug, Clone)]
pub struct Criterion {
    pub eta: EtaModel,
    pub sample: Vec<f64>,
    pub weight: Weight,
}

impl Criterion {
    pub fn new(eta: EtaModel, sample: Vec<f64>, weight: Weight) -> Result<Self> {
        if sample.len() != eta.lags() || weight.dim() != eta.lags() {
            return Err(CalibError::InvalidArgument(
                "criterion dimensions differ".into(),
            ));
        }
        Ok(Self {
            eta,
            sample,
            weight,
        })
    }

    pub fn value(&self, theta: &ThetaVector) -> f64 {
        match self.eta.eta(theta) {
            Ok(m) => objective(&m, &self.sample, &self.weight).unwrap_or(f64::INFINITY),
            Err(_) => f64::INFINITY,
        }
    }

    /// On the flattened parameter vector.
    pub fn value_flat(&self, x: &[f64]) -> f64 {
        ThetaVector::from_slice(x).map_or(f64::INFINITY, |t| self.value(&t))
    }
}
