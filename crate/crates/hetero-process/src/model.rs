use crate::error::{ProcessError, Result};
use hetero_distributions::{
    validate_density, Coupling, Density, ParametricDensity, ValidationReport,
};

/// `E[c]`, fixed: it only enters as a product with σ_ε.
pub const MEAN_C: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub density: Density,
    pub coupling: Coupling,
    pub sigma_eps: f64,
    pub mean_omega: f64,
}

impl ModelSpec {
    /// Validates the density/coupling pair; σ_ε = 0 is allowed (degenerate, constant paths).
    pub fn new(density: Density, coupling: Coupling, sigma_eps: f64) -> Result<Self> {
        if !(sigma_eps >= 0.0) || !sigma_eps.is_finite() {
            return Err(ProcessError::InvalidArgument(format!(
                "sigma_eps must be non-negative, got {sigma_eps}"
            )));
        }
        let coupling = coupling.normalized();
        let report = validate_density(&density, &coupling);
        if let Some(c) = report.failures().next() {
            return Err(
                if c.name == "parameters" || c.name == "nonnegative" || c.name == "normalised" {
                    ProcessError::InvalidArgument(format!("{}: {}", c.name, c.detail))
                } else {
                    ProcessError::NonStationary(format!("{}: {}", c.name, c.detail))
                },
            );
        }
        Ok(Self {
            density,
            coupling,
            sigma_eps,
            mean_omega: 0.0,
        })
    }

    pub fn with_mean_omega(mut self, mean_omega: f64) -> Self {
        self.mean_omega = mean_omega;
        self
    }

    pub fn report(&self) -> ValidationReport {
        validate_density(&self.density, &self.coupling)
    }

    pub fn is_long_memory(&self) -> bool {
        self.report().long_memory
    }

    /// Exponent `a > 0` of `N(z) ~ (1−z)^{−a}` at `z = 1`, if `N` diverges there.
    pub fn n_singularity(&self) -> Option<f64> {
        let e = self.density.exponent_at_one();
        (e < 0.0).then_some(-e)
    }

    /// Exponents generating the expansion of `B(z)` around `z = 1`: `B` is a
    /// series in `(1−z)^{base + Σ nᵢ gᵢ}`. `None` when `B` has no algebraic
    /// singularity there.
    pub fn singular_structure(&self) -> Option<(f64, Vec<f64>)> {
        let a = self.n_singularity()?;
        match self.coupling {
            Coupling::Rational => None,
            Coupling::Linear { .. } => Some((-a, vec![a, 1.0 - a])),
            Coupling::Affine { .. } => Some((0.0, vec![a, 1.0])),
            Coupling::PowerLaw { beta } => {
                if !supports_power_law_closed_form(&self.density) {
                    return None;
                }
                Some((-a.min(beta), vec![(beta - a).abs(), 1.0]))
            }
        }
    }

    /// Long-memory parameter `d` with `ρ(h) ~ h^{2d−1}`, when the model has long memory.
    pub fn memory_parameter(&self) -> Option<f64> {
        if !self.is_long_memory() {
            return None;
        }
        let (base, _) = self.singular_structure()?;
        Some(-base)
    }
}

pub(crate) fn supports_power_law_closed_form(density: &Density) -> bool {
    matches!(
        density,
        Density::PointMass { .. }
            | Density::Parametric(ParametricDensity::BetaNegAlpha { .. })
            | Density::Parametric(ParametricDensity::StretchedBeta { .. })
    )
}

/// Non-integer members of `{base + Σ nᵢ gᵢ}` up to `base + cap`, sorted.
pub(crate) fn exponent_set(base: f64, gens: &[f64], cap: f64, drop_integers: bool) -> Vec<f64> {
    let mut out = vec![base];
    let mut frontier = vec![base];
    while let Some(e) = frontier.pop() {
        for &g in gens {
            if g <= 1e-9 {
                continue;
            }
            let n = e + g;
            if n <= base + cap + 1e-12 && !out.iter().any(|o| (o - n).abs() < 1e-9) {
                out.push(n);
                frontier.push(n);
            }
        }
    }
    if drop_integers {
        out.retain(|e| (e - e.round()).abs() > 1e-9);
    }
    out.sort_by(|a, b| a.total_cmp(b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_set_for_linear_mixture() {
        let e = exponent_set(-0.4, &[0.4, 0.6], 1.5, true);
        // a superset of the exponents that actually occur; 0.4 has a zero coefficient
        let expect = [-0.4, 0.2, 0.4, 0.6, 0.8];
        assert_eq!(e.len(), expect.len(), "{e:?}");
        for (a, b) in e.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn explosive_linear_coupling_is_rejected() {
        let d = Density::stretched_beta(5.0, 0.75);
        assert!(matches!(
            ModelSpec::new(d, Coupling::Linear { alpha: 1.2 }, 1.0),
            Err(ProcessError::NonStationary(_))
        ));
    }
}
