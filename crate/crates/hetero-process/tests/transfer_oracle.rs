//! Closed-form transfer functions against the truncated MA series built from
//! the moment recursion.

use hetero_distributions::{Coupling, Density, ParametricDensity};
use hetero_process::ma::ma_coefficients_fast;
use hetero_process::model::ModelSpec;
use hetero_process::transfer::{spectral_density, Transfer};
use std::f64::consts::PI;

fn check(model: &ModelSpec, k: usize, lambdas: &[f64], tol: f64) {
    let t = Transfer::new(model).unwrap();
    let ma = ma_coefficients_fast(model, k).unwrap().with_tail(model);
    for &l in lambdas {
        let a = t.b(l).unwrap();
        let b = ma.transfer(l);
        assert!(
            (a - b).norm() <= tol * a.norm(),
            "{:?} λ={l}: {a} vs {b}",
            model.coupling
        );
    }
}

#[test]
fn short_memory_models_match_series() {
    let lambdas = [0.05, 0.3, 1.0, 2.0, 3.0];
    let models = [
        ModelSpec::new(
            Density::mixture(0.6, vec![0.45, -0.05], vec![0.0, 0.0], 0.3).unwrap(),
            Coupling::Affine {
                alpha: 0.8,
                phibar: 0.79,
            },
            1.0,
        ),
        ModelSpec::new(
            Density::stretched_beta(5.0, 0.75),
            Coupling::Affine {
                alpha: 0.8,
                phibar: 0.79,
            },
            1.0,
        ),
        ModelSpec::new(
            Density::mixture(1.0, vec![0.6, 0.1], vec![0.0, 0.0], 0.3).unwrap(),
            Coupling::Linear { alpha: 0.5 },
            1.0,
        ),
        ModelSpec::new(
            Density::Parametric(ParametricDensity::BellMixture {
                p: 5.0,
                q: 0.75,
                w: 0.4,
                m: -0.2,
                sigma: 0.15,
            }),
            Coupling::Affine {
                alpha: 0.5,
                phibar: 0.2,
            },
            1.0,
        ),
    ];
    for m in models {
        // the fitted tail itself scatters by ~1e-8 across K for these models
        check(&m.unwrap(), 1 << 16, &lambdas, 1e-7);
    }
}

#[test]
fn long_memory_mixture_matches_series_away_from_zero() {
    // the regular part vanishes to second order at ±1, keeping log terms negligible
    let m = ModelSpec::new(
        Density::mixture(0.5, vec![0.45, -0.05], vec![0.0, 0.0], 0.3).unwrap(),
        Coupling::Linear { alpha: 0.3 },
        1.0,
    )
    .unwrap();
    check(&m, 1 << 16, &[0.01, 0.5, 1.5, 3.0], 1e-8);
}

#[test]
fn beta_power_law_closed_form_matches_series() {
    let m = ModelSpec::new(
        Density::beta_neg_alpha(-0.3),
        Coupling::PowerLaw { beta: 1.5 },
        1.0,
    )
    .unwrap();
    let lambdas: Vec<f64> = (0..40)
        .map(|i| 0.05 + (PI - 0.05) * i as f64 / 39.0)
        .collect();
    let f = spectral_density(&m, &lambdas).unwrap();
    let ma = ma_coefficients_fast(&m, 20_000).unwrap().with_tail(&m);
    for (l, fx) in lambdas.iter().zip(&f) {
        let g = ma.transfer(*l).norm_sqr() / (2.0 * PI);
        assert!((fx - g).abs() <= 1e-4 * fx, "λ={l}: {fx} vs {g}");
    }
}

#[test]
fn stretched_power_law_matches_series() {
    let m = ModelSpec::new(
        Density::stretched_beta(4.0, 0.8),
        Coupling::PowerLaw { beta: 1.2 },
        1.0,
    )
    .unwrap();
    check(&m, 1 << 16, &[0.01, 0.1, 1.0, 2.5], 1e-8);
}
