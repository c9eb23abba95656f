use crate::coupling::Coupling;
use crate::density::{
    bell_normalizer, moments_phi, stretched_beta_moments, Density, ParametricDensity,
};
use crate::error::Result;
use crate::fourier::FourierDensity;
use crate::quad::WeightedRule;
use statrs::function::beta::ln_beta;
use statrs::function::gamma::ln_gamma;

/// Moment sequences `E[φ^k]` and `E[ψφ^k]` for k = 0..=kmax.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    pub mphi: Vec<f64>,
    pub mpsiphi: Vec<f64>,
}

impl MomentTable {
    pub fn build(density: &Density, coupling: &Coupling, kmax: usize) -> Result<Self> {
        coupling.check_parameters()?;
        let mut mphi = moments_phi(density, kmax + 1)?;
        let mpsiphi = psi_moments_from(density, coupling, &mphi, kmax)?;
        mphi.truncate(kmax + 1);
        Ok(Self { mphi, mpsiphi })
    }

    pub fn kmax(&self) -> usize {
        self.mphi.len() - 1
    }
}

/// `E[ψφ^k] = E[g(φ)φ^k]`.
pub fn moment_psi_phi(density: &Density, coupling: &Coupling, k: usize) -> Result<f64> {
    Ok(MomentTable::build(density, coupling, k)?.mpsiphi[k])
}

/// `E[ψφ^k]` for k = 0..=kmax given `mphi` up to at least kmax+1.
fn psi_moments_from(
    density: &Density,
    coupling: &Coupling,
    mphi: &[f64],
    kmax: usize,
) -> Result<Vec<f64>> {
    Ok(match *coupling {
        Coupling::Rational => (0..=kmax).map(|k| -mphi[k + 1]).collect(),
        Coupling::Linear { alpha } => (0..=kmax)
            .map(|k| alpha * (mphi[k] - mphi[k + 1]))
            .collect(),
        Coupling::Affine { alpha, phibar } => (0..=kmax)
            .map(|k| -alpha * mphi[k + 1] + phibar * mphi[k])
            .collect(),
        Coupling::PowerLaw { beta } => power_law_moments(density, beta, kmax)?,
    })
}

fn integer_power(beta: f64) -> Option<usize> {
    if beta >= 0.0 && beta <= 8.0 && beta.fract() == 0.0 {
        Some(beta as usize)
    } else {
        None
    }
}

/// `Σ_j C(β,j)(-1)^j m_{k+j}` for integer β.
fn binomial_shift(m: &[f64], beta: usize, kmax: usize) -> Vec<f64> {
    let mut coef = vec![1.0f64; beta + 1];
    for j in 1..=beta {
        coef[j] = -coef[j - 1] * (beta + 1 - j) as f64 / j as f64;
    }
    (0..=kmax)
        .map(|k| coef.iter().enumerate().map(|(j, c)| c * m[k + j]).sum())
        .collect()
}

/// `E[(1-φ)^β φ^k]` for k = 0..=kmax.
pub fn power_law_moments(density: &Density, beta: f64, kmax: usize) -> Result<Vec<f64>> {
    density.check_parameters()?;
    let int_beta = integer_power(beta);
    let fourier = |f: &FourierDensity| -> Vec<f64> {
        match int_beta {
            Some(b) => binomial_shift(&f.moments(kmax + b), b, kmax),
            None => {
                let rule = WeightedRule::endpoint(-1.0, 1.0, beta, 0.0, 0.125);
                rule.power_moments(|x| f.eval(x), kmax)
            }
        }
    };
    let singular = |d: f64| -> Vec<f64> {
        // (1-d)(2-d) B(k+2, β-d+1)
        let mut out = Vec::with_capacity(kmax + 1);
        let mut v = (1.0 - d) * (2.0 - d) / ((beta - d + 2.0) * (beta - d + 1.0));
        out.push(v);
        for k in 1..=kmax {
            let k = k as f64;
            v *= (k + 1.0) / (k + beta - d + 2.0);
            out.push(v);
        }
        out
    };
    let stretched = |p: f64, q: f64| -> Vec<f64> {
        let scale = (beta * 2f64.ln() + ln_beta(p, q + beta) - ln_beta(p, q)).exp();
        stretched_beta_moments(p, q + beta, kmax)
            .into_iter()
            .map(|v| scale * v)
            .collect()
    };
    Ok(match density {
        Density::Fourier(f) => fourier(f),
        Density::Singular(s) => singular(s.d),
        Density::Mixture(m) => {
            let mut out = vec![0.0; kmax + 1];
            if m.w > 0.0 {
                for (o, v) in out.iter_mut().zip(fourier(&m.regular)) {
                    *o += m.w * v;
                }
            }
            if m.w < 1.0 {
                for (o, v) in out.iter_mut().zip(singular(m.singular.d)) {
                    *o += (1.0 - m.w) * v;
                }
            }
            out
        }
        Density::PointMass { at } => {
            let base = (1.0 - at).powf(beta);
            (0..=kmax).map(|k| base * at.powi(k as i32)).collect()
        }
        Density::Parametric(p) => match *p {
            ParametricDensity::BetaNegAlpha { alpha } => {
                let mut v =
                    (ln_gamma(1.0 + alpha + beta) - ln_gamma(1.0 + alpha) - ln_gamma(1.0 + beta))
                        .exp();
                let mut out = Vec::with_capacity(kmax + 1);
                out.push(v);
                for k in 1..=kmax {
                    let k = k as f64;
                    v *= (k - 1.0 - alpha) / (k + beta);
                    out.push(v);
                }
                out
            }
            ParametricDensity::StretchedBeta { p, q } => stretched(p, q),
            ParametricDensity::BellMixture { p, q, w, m, sigma } => {
                let sb = stretched(p, q);
                let k = bell_normalizer(m, sigma);
                let gauss = |x: f64| (-0.5 * ((x - m) / sigma).powi(2)).exp() / k;
                let width = (0.25 * sigma).min(0.125);
                let bell = match int_beta {
                    Some(b) => {
                        let rule = WeightedRule::endpoint(-1.0, 1.0, 1.0, 1.0, width);
                        binomial_shift(&rule.power_moments(gauss, kmax + b), b, kmax)
                    }
                    None => {
                        let rule = WeightedRule::endpoint(-1.0, 1.0, 1.0 + beta, 1.0, width);
                        rule.power_moments(gauss, kmax)
                    }
                };
                sb.iter()
                    .zip(&bell)
                    .map(|(s, b)| w * s + (1.0 - w) * b)
                    .collect()
            }
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::SingularBeta;

    #[test]
    fn linear_coupling_on_singular() {
        let d = Density::Singular(SingularBeta::new(0.5).unwrap());
        let v = moment_psi_phi(&d, &Coupling::Linear { alpha: 0.3 }, 0).unwrap();
        assert!((v - 0.06).abs() < 1e-15);
    }

    #[test]
    fn rational_is_minus_shifted() {
        let d = Density::mixture(0.3, vec![0.2, 0.1], vec![0.0, -0.1], 0.2).unwrap();
        let t = MomentTable::build(&d, &Coupling::Rational, 30).unwrap();
        let m = moments_phi(&d, 31).unwrap();
        for k in 0..=30 {
            assert_eq!(t.mpsiphi[k], -m[k + 1]);
        }
    }

    #[test]
    fn power_law_one_equals_linear_one() {
        let dens = [
            Density::mixture(0.4, vec![0.2], vec![-0.1], 0.35).unwrap(),
            Density::stretched_beta(5.0, 0.75),
            Density::beta_neg_alpha(-0.3),
        ];
        for d in &dens {
            let a = MomentTable::build(d, &Coupling::PowerLaw { beta: 1.0 }, 60).unwrap();
            let b = MomentTable::build(d, &Coupling::Linear { alpha: 1.0 }, 60).unwrap();
            for k in 0..=60 {
                assert!((a.mpsiphi[k] - b.mpsiphi[k]).abs() < 1e-12, "{d:?} k={k}");
            }
        }
    }
}
