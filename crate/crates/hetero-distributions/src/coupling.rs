use crate::error::{DistError, Result};

/// Conditional mean `g(φ) = E[ψ | φ]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    /// ψ = -φ.
    Rational,
    /// g(φ) = α(1 - φ).
    Linear { alpha: f64 },
    /// ψ = -αφ + φ̄′.
    Affine { alpha: f64, phibar: f64 },
    /// g(φ) = (1 - φ)^β.
    PowerLaw { beta: f64 },
}

impl Coupling {
    pub fn g(&self, phi: f64) -> f64 {
        match *self {
            Coupling::Rational => -phi,
            Coupling::Linear { alpha } => alpha * (1.0 - phi),
            Coupling::Affine { alpha, phibar } => phibar - alpha * phi,
            Coupling::PowerLaw { beta } => (1.0 - phi).max(0.0).powf(beta),
        }
    }

    pub fn check_parameters(&self) -> Result<()> {
        let finite = match *self {
            Coupling::Rational => true,
            Coupling::Linear { alpha } => alpha.is_finite(),
            Coupling::Affine { alpha, phibar } => alpha.is_finite() && phibar.is_finite(),
            Coupling::PowerLaw { beta } => beta.is_finite() && beta >= 0.0,
        };
        if finite {
            Ok(())
        } else {
            Err(DistError::InvalidParameter(format!(
                "bad coupling parameters {self:?}"
            )))
        }
    }

    /// Affine couplings with φ̄′ = α are the linear coupling α(1-φ).
    pub fn normalized(&self) -> Coupling {
        match *self {
            Coupling::Affine { alpha, phibar } if phibar == alpha => Coupling::Linear { alpha },
            c => c,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_on_diagonal_is_linear() {
        let a = Coupling::Affine {
            alpha: 0.3,
            phibar: 0.3,
        };
        let l = Coupling::Linear { alpha: 0.3 };
        assert_eq!(a.normalized(), l);
        for i in 0..=20 {
            let x = -1.0 + 0.1 * i as f64;
            assert!((a.g(x) - l.g(x)).abs() < 1e-15);
        }
    }
}
