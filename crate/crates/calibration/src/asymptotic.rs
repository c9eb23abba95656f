//! Sandwich covariance `A_L = H⁻¹ G′VΣ²VG H⁻¹`, `H = G′VG`, `V = W⁻¹`, and
//! the choice of the lag count `L` minimising `‖A_L‖`.

use crate::error::{CalibError, Result};
use crate::objective::Weight;
use crate::sigma2::{sigma2_matrix, Sigma2Form};
use crate::spectral::EtaModel;
use crate::theta::ThetaVector;
use nalgebra::{DMatrix, SymmetricEigen};

/// Largest acceptable condition number of `G′VG`.
const MAX_CONDITION: f64 = 1e14;

/// `G_L = ∂η/∂θ′` by central differences with steps `max(1e-5, 1e-5|θ_j|)`;
/// one-sided next to the edge of Θ.
pub fn eta_jacobian(eta: &EtaModel, theta: &ThetaVector) -> Result<DMatrix<f64>> {
    let x = theta.to_vec();
    let mut g = DMatrix::zeros(eta.lags(), x.len());
    let at = |v: &[f64]| -> Result<Vec<f64>> { eta.eta(&ThetaVector::from_slice(v)?) };
    let centre = at(&x)?;
    for j in 0..x.len() {
        let h = (1e-5 * x[j].abs()).max(1e-5);
        let mut up = x.clone();
        up[j] += h;
        let mut dn = x.clone();
        dn[j] -= h;
        let col: Vec<f64> = match (at(&up), at(&dn)) {
            (Ok(a), Ok(b)) => a.iter().zip(&b).map(|(p, m)| (p - m) / (2.0 * h)).collect(),
            (Ok(a), Err(_)) => a.iter().zip(&centre).map(|(p, c)| (p - c) / h).collect(),
            (Err(_), Ok(b)) => centre.iter().zip(&b).map(|(c, m)| (c - m) / h).collect(),
            (Err(e), Err(_)) => return Err(e),
        };
        g.set_column(j, &nalgebra::DVector::from_vec(col));
    }
    Ok(g)
}

fn inverse_checked(h: &DMatrix<f64>, names: &[String]) -> Result<DMatrix<f64>> {
    let sym = 0.5 * (h + h.transpose());
    let eig = SymmetricEigen::new(sym);
    let (imin, &lmin) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    let lmax = eig.eigenvalues.amax();
    if !(lmin > lmax / MAX_CONDITION) {
        let v = eig.eigenvectors.column(imin);
        let (k, _) = v
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .unwrap();
        return Err(CalibError::RankDeficient(
            names.get(k).cloned().unwrap_or_else(|| format!("#{k}")),
        ));
    }
    let inv = eig.eigenvalues.map(|v| 1.0 / v);
    Ok(&eig.eigenvectors * DMatrix::from_diagonal(&inv) * eig.eigenvectors.transpose())
}

/// The sandwich for a given Jacobian, weight and `Σ²`.
pub fn sandwich(
    g: &DMatrix<f64>,
    weight: &Weight,
    sigma2: &DMatrix<f64>,
    names: &[String],
) -> Result<DMatrix<f64>> {
    let vg = weight.solve(g);
    let h = g.transpose() * &vg;
    let hinv = inverse_checked(&h, names)?;
    let meat = vg.transpose() * sigma2 * &vg;
    let a = &hinv * meat * &hinv;
    Ok(0.5 * (&a + a.transpose()))
}

/// `[G′Σ⁻²G]⁻¹`, the optimally weighted covariance.
pub fn reduced_covariance(
    g: &DMatrix<f64>,
    sigma2: &Weight,
    names: &[String],
) -> Result<DMatrix<f64>> {
    let h = g.transpose() * sigma2.solve(g);
    inverse_checked(&h, names)
}

/// How the weight matrix of the criterion is chosen at a given θ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightingPolicy {
    Identity,
    /// `W = Σ²(θ)`, the efficient choice.
    #[default]
    Sigma2,
}

/// `A_L(θ)` under a weighting policy.
pub fn asymptotic_covariance(
    theta: &ThetaVector,
    l: usize,
    policy: WeightingPolicy,
    form: Sigma2Form,
) -> Result<DMatrix<f64>> {
    let eta = EtaModel::new(theta.q(), l);
    let g = eta_jacobian(&eta, theta)?;
    let s2 = sigma2_matrix(theta, l, form)?.matrix;
    let names = ThetaVector::names(theta.q());
    match policy {
        WeightingPolicy::Identity => sandwich(&g, &Weight::identity(l), &s2, &names),
        WeightingPolicy::Sigma2 => reduced_covariance(&g, &Weight::new(s2)?, &names),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LagChoice {
    pub l_star: usize,
    /// `(L, ‖A_L‖_F)` for every candidate that could be evaluated.
    pub profile: Vec<(usize, f64)>,
}

/// Argmin of the Frobenius norm of `cov(L)` over the candidates.
pub fn optimal_l_by<F>(candidates: &[usize], mut cov: F) -> Result<LagChoice>
where
    F: FnMut(usize) -> Result<DMatrix<f64>>,
{
    if candidates.is_empty() {
        return Err(CalibError::InvalidArgument(
            "no candidate lag counts".into(),
        ));
    }
    let mut profile = Vec::with_capacity(candidates.len());
    for &l in candidates {
        profile.push((l, cov(l)?.norm()));
    }
    let l_star = profile.iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap().0;
    Ok(LagChoice { l_star, profile })
}

/// `L* = argmin ‖A_L(θ̂)‖_F` over candidates in `[2q+4, ∞)`.
pub fn optimal_l(
    theta: &ThetaVector,
    candidates: &[usize],
    policy: WeightingPolicy,
    form: Sigma2Form,
) -> Result<LagChoice> {
    if let Some(&l) = candidates.iter().find(|&&l| l < theta.dim()) {
        return Err(CalibError::InvalidArgument(format!(
            "L = {l} below 2q+4 = {}",
            theta.dim()
        )));
    }
    optimal_l_by(candidates, |l| {
        asymptotic_covariance(theta, l, policy, form)
    })
}
