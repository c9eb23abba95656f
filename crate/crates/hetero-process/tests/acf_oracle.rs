//! Autocovariances from the spectral and MA paths against closed forms and
//! each other.

use hetero_distributions::{Coupling, Density, ParametricDensity, SingularBeta};
use hetero_process::acf::{acf_via_fft, acf_via_ma, tail_exponent};
use hetero_process::ma::{ma_coefficients, ma_coefficients_fast};
use hetero_process::model::ModelSpec;
use statrs::function::gamma::ln_gamma;

#[test]
fn white_noise_from_both_paths() {
    let m = ModelSpec::new(
        Density::mixture(0.6, vec![0.15], vec![-0.1], 0.3).unwrap(),
        Coupling::Rational,
        1.3,
    )
    .unwrap();
    let f = acf_via_fft(&m, 1 << 12, 100).unwrap();
    assert!((f.gamma[0] - 1.69).abs() < 1e-10);
    assert!(f.gamma[1..].iter().all(|g| g.abs() < 1e-10));
    let ma = acf_via_ma(&ma_coefficients(&m, 500).unwrap(), 1.3, 20);
    assert!((ma.gamma[0] - 1.69).abs() < 1e-14);
    assert!(ma.gamma[1..].iter().all(|g| *g == 0.0));
}

#[test]
fn ar1_closed_form_from_both_paths() {
    for psi in [0.5, 0.6] {
        let m = ModelSpec::new(
            Density::PointMass { at: 0.0 },
            Coupling::Affine {
                alpha: 0.0,
                phibar: psi,
            },
            1.0,
        )
        .unwrap();
        let f = acf_via_fft(&m, 1 << 12, 50).unwrap();
        let ma = acf_via_ma(&ma_coefficients(&m, 2000).unwrap(), 1.0, 50);
        for h in 0..=50 {
            let g = psi.powi(h as i32) / (1.0 - psi * psi);
            assert!((f.gamma[h] - g).abs() < 1e-8, "fft h={h}");
            assert!((ma.gamma[h] - g).abs() < 1e-8, "ma h={h}");
            assert!((f.rho[h] - psi.powi(h as i32)).abs() < 1e-8);
        }
    }
}

/// `Σ_{k≥0} m_k m_{k+h}` for `m_k = Γ(k+2)Γ(3−d)/Γ(k+3−d)`: direct sum to M,
/// then the integral of the two-term expansion `m_k ≈ C k^{d−1}(1 + c/k)`
/// with a trapezoid end term.
fn case_three_gamma(d: f64, h: usize) -> f64 {
    let big = 1usize << 21;
    let lc = ln_gamma(3.0 - d);
    let m: Vec<f64> = (0..=big + h)
        .map(|k| (ln_gamma(k as f64 + 2.0) + lc - ln_gamma(k as f64 + 3.0 - d)).exp())
        .collect();
    let mut s = 0.0;
    for k in 0..big {
        s += m[k] * m[k + h];
    }
    // Γ(k+a)/Γ(k+b) = k^{a−b}(1 + (a−b)(a+b−1)/(2k) + …), a = 2, b = 3 − d
    let c = (d - 1.0) * (4.0 - d) / 2.0;
    let amp = lc.exp();
    let term = |k: f64| {
        amp * amp * (k * (k + h as f64)).powf(d - 1.0) * (1.0 + c / k) * (1.0 + c / (k + h as f64))
    };
    // ∫_M^∞ after x = M s^{−p}, p = 1/(1−2d), which leaves a smooth integrand on (0, 1]
    let gl = hetero_distributions::quad::legendre(60);
    let mf = big as f64;
    let p = 1.0 / (1.0 - 2.0 * d);
    let integral: f64 = gl
        .iter()
        .map(|&(t, w)| {
            let sv = 0.5 * (t + 1.0);
            let x = mf * sv.powf(-p);
            0.5 * w * term(x) * p * mf * sv.powf(-p - 1.0)
        })
        .sum();
    let dterm = (term(mf * (1.0 + 1e-4)) - term(mf * (1.0 - 1e-4))) / (2e-4 * mf);
    s + integral + 0.5 * term(mf) - dterm / 12.0
}

#[test]
fn case_three_matches_moment_sums() {
    let d = 0.3;
    let m = ModelSpec::new(
        Density::Singular(SingularBeta::new(d).unwrap()),
        Coupling::Affine {
            alpha: 0.0,
            phibar: 0.0,
        },
        1.0,
    )
    .unwrap();
    let ma = ma_coefficients_fast(&m, 1 << 16).unwrap().with_tail(&m);
    let acf = acf_via_ma(&ma, 1.0, 20);
    let g0 = case_three_gamma(d, 0);
    for h in [1usize, 5, 20] {
        let rho = case_three_gamma(d, h) / g0;
        assert!(
            (acf.rho[h] - rho).abs() < 1e-10,
            "h={h}: {} vs {rho}",
            acf.rho[h]
        );
    }
}

#[test]
fn beta_power_law_fft_matches_ma() {
    let m = ModelSpec::new(
        Density::beta_neg_alpha(-0.3),
        Coupling::PowerLaw { beta: 1.5 },
        1.0,
    )
    .unwrap();
    let f = acf_via_fft(&m, 1 << 16, 200).unwrap();
    let ma = acf_via_ma(
        &ma_coefficients_fast(&m, 50_000).unwrap().with_tail(&m),
        1.0,
        200,
    );
    for h in 0..=200 {
        assert!(
            ((f.rho[h] - ma.rho[h]) / ma.rho[h]).abs() < 1e-3,
            "h={h}: {} vs {}",
            f.rho[h],
            ma.rho[h]
        );
    }
}

#[test]
fn stretched_beta_memory_switch() {
    let d = Density::stretched_beta(5.0, 0.75);
    let long = ModelSpec::new(
        d.clone(),
        Coupling::Affine {
            alpha: 0.3,
            phibar: 0.3,
        },
        1.0,
    )
    .unwrap();
    // ρ ~ K h^{1−2q}(1 + c h^{q−1} + …): the local slope creeps toward −0.5
    let acf = acf_via_fft(&long, 1 << 20, 50_000).unwrap();
    let slopes: Vec<f64> = [(50, 500), (500, 5000), (5000, 50_000)]
        .iter()
        .map(|&(a, b)| tail_exponent(&acf.rho, a..=b).unwrap())
        .inspect(|fit| assert!(fit.power_law, "{fit:?}"))
        .map(|fit| fit.slope)
        .collect();
    assert!(slopes.windows(2).all(|w| w[1] < w[0]), "{slopes:?}");
    assert!((slopes[2] + 0.5).abs() < 0.03, "{slopes:?}");

    let short = ModelSpec::new(
        d,
        Coupling::Affine {
            alpha: 0.8,
            phibar: 0.79,
        },
        1.0,
    )
    .unwrap();
    let acf = acf_via_fft(&short, 1 << 16, 500).unwrap();
    let fit = tail_exponent(&acf.rho, 50..=500).unwrap();
    assert!(!fit.power_law, "{fit:?}");
}

#[test]
fn mixture_tail_implies_d() {
    let m = ModelSpec::new(
        Density::mixture(0.6, vec![0.45, -0.05], vec![0.0, 0.0], 0.3).unwrap(),
        Coupling::Linear { alpha: 0.3 },
        1.0,
    )
    .unwrap();
    let acf = acf_via_ma(
        &ma_coefficients_fast(&m, 100_000).unwrap().with_tail(&m),
        1.0,
        500,
    );
    let fit = tail_exponent(&acf.rho, 50..=500).unwrap();
    assert!((fit.implied_d - 0.3).abs() < 0.05, "{fit:?}");
}

#[test]
fn model_autocovariances_are_positive_definite() {
    let models = [
        ModelSpec::new(
            Density::mixture(0.5, vec![0.2], vec![0.1], 0.45).unwrap(),
            Coupling::Linear { alpha: 0.3 },
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
        let acf = acf_via_fft(&m.unwrap(), 1 << 14, 300).unwrap();
        assert!(acf.min_prediction_ratio() >= -1e-8);
        assert!(acf.rho.iter().all(|r| r.abs() <= 1.0 + 1e-12));
    }
}

#[test]
fn grid_must_cover_the_lags() {
    let m = ModelSpec::new(
        Density::stretched_beta(5.0, 0.75),
        Coupling::Linear { alpha: 0.3 },
        1.0,
    )
    .unwrap();
    assert!(acf_via_fft(&m, 1024, 300).is_err());
    assert!(acf_via_fft(&m, 1000, 10).is_err());
}
