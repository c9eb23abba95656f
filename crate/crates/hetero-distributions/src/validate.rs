use crate::coupling::Coupling;
use crate::density::{bell_normalizer, density_eval, Density, ParametricDensity};
use crate::error::DistError;
use crate::quad::WeightedRule;
use statrs::function::beta::ln_beta;

/// Tolerance on `φ̄′ = α` for the long-memory flag.
pub const LONG_MEMORY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    /// Second-order stationarity of the aggregate.
    pub stationary: bool,
    /// Hyperbolic (long-memory) decay of the aggregate ACF.
    pub long_memory: bool,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

type Piece = (f64, f64, f64, f64, Box<dyn Fn(f64) -> f64>);

/// Components `(lo, hi, exponent at hi, exponent at lo, smooth factor)` whose
/// sum is the density; the algebraic endpoint factors go into the rule weights.
fn pieces(density: &Density) -> Vec<Piece> {
    let singular = |d: f64, scale: f64| -> Piece {
        let c = scale * (1.0 - d) * (2.0 - d);
        (0.0, 1.0, -d, 0.0, Box::new(move |x| c * x))
    };
    let stretched = |p: f64, q: f64, scale: f64| -> Piece {
        let c = scale / (2f64.powf(p + q - 1.0) * ln_beta(p, q).exp());
        (-1.0, 1.0, q - 1.0, p - 1.0, Box::new(move |_| c))
    };
    match density {
        Density::Fourier(f) => {
            let f = f.clone();
            vec![(-1.0, 1.0, 0.0, 0.0, Box::new(move |x| f.eval(x)))]
        }
        Density::Singular(s) => vec![singular(s.d, 1.0)],
        Density::Mixture(m) => {
            let (w, f) = (m.w, m.regular.clone());
            vec![
                (-1.0, 1.0, 0.0, 0.0, Box::new(move |x| w * f.eval(x))),
                singular(m.singular.d, 1.0 - w),
            ]
        }
        Density::PointMass { .. } => vec![],
        Density::Parametric(p) => match *p {
            ParametricDensity::BetaNegAlpha { alpha } => {
                let c = 1.0 / ln_beta(-alpha, 1.0 + alpha).exp();
                vec![(0.0, 1.0, alpha, -alpha - 1.0, Box::new(move |_| c))]
            }
            ParametricDensity::StretchedBeta { p, q } => vec![stretched(p, q, 1.0)],
            ParametricDensity::BellMixture { p, q, w, m, sigma } => {
                let k = (1.0 - w) / bell_normalizer(m, sigma);
                vec![
                    stretched(p, q, w),
                    (
                        -1.0,
                        1.0,
                        1.0,
                        1.0,
                        Box::new(move |x| k * (-0.5 * ((x - m) / sigma).powi(2)).exp()),
                    ),
                ]
            }
        },
    }
}

fn total_mass(density: &Density) -> f64 {
    if let Density::PointMass { .. } = density {
        return 1.0;
    }
    pieces(density)
        .into_iter()
        .map(|(lo, hi, a, b, h)| WeightedRule::endpoint(lo, hi, a, b, 0.05).integrate(h))
        .sum()
}

/// Checks positivity, normalisation, stationarity and memory conditions.
pub fn validate_density(density: &Density, coupling: &Coupling) -> ValidationReport {
    let mut checks = Vec::new();
    let params = density.check_parameters().and(coupling.check_parameters());
    let params_ok = params.is_ok();
    checks.push(check(
        "parameters",
        params_ok,
        match params {
            Ok(()) => "ok".into(),
            Err(e) => e.to_string(),
        },
    ));
    if !params_ok {
        return ValidationReport {
            checks,
            stationary: false,
            long_memory: false,
        };
    }

    // positivity on the uniform grid
    let n = crate::fourier::POSITIVITY_GRID;
    let mut min_f = f64::INFINITY;
    for i in 0..n {
        let x = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
        match density_eval(density, x) {
            Ok(v) => min_f = min_f.min(v),
            Err(DistError::AtSingularity(_)) => {}
            Err(_) => min_f = f64::NEG_INFINITY,
        }
    }
    if let Density::PointMass { .. } = density {
        min_f = 0.0;
    }
    checks.push(check(
        "nonnegative",
        min_f >= -crate::fourier::POSITIVITY_FLOOR,
        format!("grid minimum {min_f:.3e}"),
    ));

    let mass = total_mass(density);
    checks.push(check(
        "normalised",
        (mass - 1.0).abs() <= 1e-8,
        format!("integral {mass:.12}"),
    ));

    // second-order stationarity of the singular behaviour at φ = 1
    let (stat_ok, stat_detail) = match density {
        Density::Mixture(m) if m.w < 1.0 => {
            (m.singular.d < 0.5, format!("d = {} < 1/2", m.singular.d))
        }
        Density::Singular(s) => (s.d < 0.5, format!("d = {} < 1/2", s.d)),
        Density::Parametric(ParametricDensity::BetaNegAlpha { alpha }) => {
            (*alpha > -0.5, format!("alpha = {alpha} > -1/2"))
        }
        Density::Parametric(ParametricDensity::StretchedBeta { q, .. }) => {
            (*q > 0.5, format!("q = {q} > 1/2"))
        }
        Density::Parametric(ParametricDensity::BellMixture { q, w, .. }) if *w > 0.0 => {
            (*q > 0.5, format!("q = {q} > 1/2"))
        }
        _ => (true, "no singularity at 1".into()),
    };
    checks.push(check("second_order_stationarity", stat_ok, stat_detail));

    let mut denominator_ok = true;
    let stretched_p = match density {
        Density::Parametric(ParametricDensity::StretchedBeta { p, q })
        | Density::Parametric(ParametricDensity::BellMixture { p, q, .. }) => Some((*p, *q)),
        _ => None,
    };
    let slope = match *coupling {
        Coupling::Linear { alpha } => Some(alpha),
        Coupling::Affine { alpha, .. } => Some(alpha),
        _ => None,
    };
    if let (Some((p, q)), Some(alpha)) = (stretched_p, slope) {
        let lo = (1.0 - p) / q;
        denominator_ok = lo < alpha && alpha < 1.0;
        checks.push(check(
            "bounded_denominator",
            denominator_ok,
            format!("{lo:.4} < alpha = {alpha} < 1"),
        ));
    } else if let Coupling::Linear { alpha } = *coupling {
        denominator_ok = alpha < 1.0;
        checks.push(check(
            "bounded_denominator",
            denominator_ok,
            format!("alpha = {alpha} < 1"),
        ));
    }

    let diverges = density.exponent_at_one() < 0.0;
    let long_memory = diverges
        && match *coupling {
            Coupling::Linear { .. } => true,
            Coupling::Affine { alpha, phibar } => (phibar - alpha).abs() <= LONG_MEMORY_TOL,
            Coupling::PowerLaw { beta } => beta > 0.0,
            Coupling::Rational => false,
        };

    ValidationReport {
        checks,
        stationary: stat_ok && denominator_ok,
        long_memory,
    }
}
