//! Pointwise confidence band for the estimated density `f(x; θ̂)`.

use crate::error::{CalibError, Result};
use crate::theta::ThetaVector;
use nalgebra::{DMatrix, DVector};
use statrs::distribution::{ContinuousCDF, Normal};

#[derive(Debug, Clone, PartialEq)]
pub struct DensityBand {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub level: f64,
}

/// `f̂(x) ± z·√(D′A D/T)` with `D = ∂f/∂θ`. Where `D` is infinite (the `d`
/// direction at `x = 1`) the band is unbounded.
pub fn density_confidence_band(
    theta: &ThetaVector,
    a_l: &DMatrix<f64>,
    t: usize,
    x_grid: &[f64],
    level: f64,
) -> Result<DensityBand> {
    if !(level > 0.0 && level < 1.0) {
        return Err(CalibError::InvalidArgument(format!(
            "confidence level {level} outside (0, 1)"
        )));
    }
    if a_l.nrows() != theta.dim() || a_l.ncols() != theta.dim() {
        return Err(CalibError::InvalidArgument(format!(
            "A_L is {}x{} for θ of dimension {}",
            a_l.nrows(),
            a_l.ncols(),
            theta.dim()
        )));
    }
    if t == 0 {
        return Err(CalibError::InvalidArgument("sample length is zero".into()));
    }
    let z = Normal::new(0.0, 1.0)
        .unwrap()
        .inverse_cdf(0.5 + 0.5 * level);
    let mut band = DensityBand {
        x: x_grid.to_vec(),
        f: vec![],
        lo: vec![],
        hi: vec![],
        level,
    };
    for &x in x_grid {
        let f = theta.density(x);
        let g = theta.density_gradient(x);
        let half = if g.iter().all(|v| v.is_finite()) {
            let d = DVector::from_vec(g);
            z * ((d.transpose() * a_l * &d)[(0, 0)].max(0.0) / t as f64).sqrt()
        } else {
            f64::INFINITY
        };
        band.f.push(f);
        if half.is_finite() {
            band.lo.push(f - half);
            band.hi.push(f + half);
        } else {
            band.lo.push(f64::NEG_INFINITY);
            band.hi.push(f64::INFINITY);
        }
    }
    Ok(band)
}
