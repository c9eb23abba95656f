//! Monte-Carlo checks of the aggregate and panel simulators.

use hetero_distributions::{Coupling, Density, SingularBeta};
use hetero_process::model::ModelSpec;
use hetero_process::simulate::{simulate_aggregate, simulate_panel, AgentPanel};
use statrs::distribution::{ContinuousCDF, Normal};
use volatility_core::sample_acf;

fn mean_sd(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    (
        m,
        (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt(),
    )
}

#[test]
fn rational_aggregate_is_gaussian_white_noise() {
    let m = ModelSpec::new(
        Density::mixture(0.6, vec![0.15], vec![-0.1], 0.3).unwrap(),
        Coupling::Rational,
        0.4,
    )
    .unwrap()
    .with_mean_omega(-4.5);
    let s = simulate_aggregate(&m, 10_000, 100, 17).unwrap();
    assert_eq!(s.truncation_bias, 0.0);
    let mut z: Vec<f64> = s.series.omega.iter().map(|v| (v + 4.5) / 0.4).collect();
    z.sort_by(|a, b| a.total_cmp(b));
    let n = z.len() as f64;
    let norm = Normal::new(0.0, 1.0).unwrap();
    let ks = z.iter().enumerate().fold(0.0f64, |d, (i, &v)| {
        let f = norm.cdf(v);
        d.max((f - i as f64 / n).abs())
            .max(((i + 1) as f64 / n - f).abs())
    });
    // 1% critical value of the one-sample KS statistic
    assert!(ks < 1.628 / n.sqrt(), "{ks}");
}

#[test]
fn ar1_aggregate_first_autocorrelation() {
    let m = ModelSpec::new(
        Density::PointMass { at: 0.0 },
        Coupling::Affine {
            alpha: 0.0,
            phibar: 0.5,
        },
        1.0,
    )
    .unwrap();
    let r1: Vec<f64> = (0..40)
        .map(|rep| {
            sample_acf(
                &simulate_aggregate(&m, 2000, 50, rep).unwrap().series.omega,
                1,
            )
            .unwrap()[1]
        })
        .collect();
    let (mean, sd) = mean_sd(&r1);
    assert!(
        (mean - 0.5).abs() < 3.0 * sd / (r1.len() as f64).sqrt(),
        "{mean} ± {sd}"
    );
}

#[test]
fn rational_panel_is_white_noise() {
    let m = ModelSpec::new(
        Density::mixture(0.6, vec![0.15], vec![-0.1], 0.3).unwrap(),
        Coupling::Rational,
        1.0,
    )
    .unwrap();
    let mut p = AgentPanel::draw(&m, 10_000, 0.0, 4).unwrap();
    let s = simulate_panel(&mut p, &m, 4000, 100, 9, 0).unwrap();
    let acf = sample_acf(&s.series.omega, 20).unwrap();
    let band = 2.0 / 4000f64.sqrt();
    let inside = acf[1..].iter().filter(|r| r.abs() <= band).count();
    assert!(inside >= 18, "{inside} of 20 inside ±{band}");
}

#[test]
fn panel_and_aggregate_autocorrelations_agree() {
    let m = ModelSpec::new(
        Density::Singular(SingularBeta::new(0.3).unwrap()),
        Coupling::Linear { alpha: 0.3 },
        1.0,
    )
    .unwrap();
    let (reps, t, lags) = (16, 2000, 20);
    let mut agg = vec![Vec::new(); lags + 1];
    let mut pan = vec![Vec::new(); lags + 1];
    for rep in 0..reps {
        let a = sample_acf(
            &simulate_aggregate(&m, t, 0, 100 + rep)
                .unwrap()
                .series
                .omega,
            lags,
        )
        .unwrap();
        let mut panel = AgentPanel::draw(&m, 10_000, 0.0, 200 + rep).unwrap();
        let p = sample_acf(
            &simulate_panel(&mut panel, &m, t, 5000, 300 + rep, 0)
                .unwrap()
                .series
                .omega,
            lags,
        )
        .unwrap();
        for h in 0..=lags {
            agg[h].push(a[h]);
            pan[h].push(p[h]);
        }
    }
    for h in 1..=lags {
        let (ma, sa) = mean_sd(&agg[h]);
        let (mp, sp) = mean_sd(&pan[h]);
        let se = ((sa * sa + sp * sp) / reps as f64).sqrt();
        assert!(
            (ma - mp).abs() <= 3.0 * se,
            "h={h}: aggregate {ma:.4} panel {mp:.4} se {se:.4}"
        );
    }
}
