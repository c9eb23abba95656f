//! Monte-Carlo checks of the realized-variance statistics and sample moments.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Normal};
use statrs::distribution::{ContinuousCDF, Normal as StNormal};
use volatility_core::*;

fn gbm_day(rng: &mut ChaCha8Rng, sigma: f64, steps: usize) -> IntradayDay {
    let dt = 1.0 / steps as f64;
    let z = Normal::new(0.0, sigma * dt.sqrt()).unwrap();
    let mut p = 100.0f64;
    let mut obs = vec![(0u32, p)];
    for i in 1..=steps {
        p *= (z.sample(rng) - 0.5 * sigma * sigma * dt).exp();
        obs.push((60 * i as u32, p));
    }
    IntradayDay::new("d", obs)
}

fn ks_normal(mut x: Vec<f64>) -> f64 {
    let n = StNormal::standard();
    x.sort_by(|a, b| a.total_cmp(b));
    let m = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(i, v)| {
            let f = n.cdf(*v);
            (f - i as f64 / m).abs().max(((i + 1) as f64 / m - f).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn realized_variance_is_unbiased_for_gbm() {
    let sigma = 0.2 / 252f64.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rv: Vec<f64> = (0..10_000)
        .map(|_| {
            compute_realized_variance(&gbm_day(&mut rng, sigma, 390))
                .unwrap()
                .rv
        })
        .collect();
    let n = rv.len() as f64;
    let mean = rv.iter().sum::<f64>() / n;
    let sd = (rv.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    assert!(
        (mean - sigma * sigma).abs() < 3.0 * sd / n.sqrt(),
        "{mean} vs {}",
        sigma * sigma
    );
}

#[test]
fn standardized_statistic_is_normal() {
    let sigma = 0.015;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let z: Vec<f64> = (0..5_000)
        .map(|_| {
            let r = compute_realized_variance(&gbm_day(&mut rng, sigma, 390)).unwrap();
            let band = rv_error_band(&r.returns).unwrap();
            (r.rv - sigma * sigma) / band.plain
        })
        .collect();
    let d = ks_normal(z);
    // 1% critical value of the one-sample KS statistic
    assert!(d < 1.628 / 5_000f64.sqrt(), "KS distance {d}");
}

#[test]
fn lognormal_rv_gives_symmetric_log_vol() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = Normal::new(-4.0f64, 0.5).unwrap();
    let rv: Vec<f64> = (0..10_000).map(|_| n.sample(&mut rng).exp()).collect();
    let s = RVSeries {
        symbol: "s".into(),
        dates: vec!["x".into(); rv.len()],
        n_obs: vec![2; rv.len()],
        rv,
    };
    let lv = log_vol_series(&s).unwrap();
    assert!(normality_diagnostics(&lv.omega).unwrap().skewness.abs() < 0.1);
    let m = lv.omega.iter().sum::<f64>() / lv.len() as f64;
    assert!((m - lv.mean_omega).abs() < 1e-12);
}

#[test]
fn white_noise_autocovariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let n = Normal::new(0.0, 1.0).unwrap();
    let x: Vec<f64> = (0..10_000).map(|_| n.sample(&mut rng)).collect();
    let g = sample_autocov(&x, 20).unwrap();
    assert!(g[1].abs() <= 3.0 / 100.0);
    let r = sample_acf(&x, 20).unwrap();
    let inside = r[1..].iter().filter(|v| v.abs() <= 2.0 / 100.0).count();
    assert!(inside >= 18, "{inside}");
}

#[test]
fn ar1_first_autocorrelation() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let n = Normal::new(0.0, 1.0).unwrap();
    let mut x = vec![0.0f64; 50_000];
    for t in 1..x.len() {
        x[t] = 0.5 * x[t - 1] + n.sample(&mut rng);
    }
    let r = sample_acf(&x, 1).unwrap();
    assert!((r[1] - 0.5).abs() < 0.02);
}

#[test]
fn autocovariance_toeplitz_is_psd() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let e = Exp::new(1.0).unwrap();
    let x: Vec<f64> = (0..300).map(|_| e.sample(&mut rng)).collect();
    let l = 40;
    let g = sample_autocov(&x, l).unwrap();
    // Cholesky with a tiny ridge succeeds iff the matrix is PSD up to that ridge
    let n = l + 1;
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = g[i.abs_diff(j)] + if i == j { 1e-10 * g[0] } else { 0.0 };
        }
    }
    for j in 0..n {
        let mut s = a[j * n + j];
        for k in 0..j {
            s -= a[j * n + k] * a[j * n + k];
        }
        assert!(s > 0.0, "pivot {j} = {s}");
        let d = s.sqrt();
        a[j * n + j] = d;
        for i in j + 1..n {
            let mut t = a[i * n + j];
            for k in 0..j {
                t -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = t / d;
        }
    }
}

#[test]
fn kde_tracks_normal_density() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = Normal::new(0.0, 1.0).unwrap();
    let x: Vec<f64> = (0..10_000).map(|_| n.sample(&mut rng)).collect();
    let h = silverman_bandwidth(&x).unwrap();
    let grid: Vec<f64> = (0..=80).map(|i| -2.0 + i as f64 * 0.05).collect();
    let f = kde_density(&x, h, &grid).unwrap();
    for (g, v) in grid.iter().zip(&f) {
        let exact = (-0.5 * g * g).exp() / (2.0 * std::f64::consts::PI).sqrt();
        assert!((v - exact).abs() <= 0.03);
    }
    // mass over mean ± 6 sd
    let wide: Vec<f64> = (0..=1200).map(|i| -6.0 + i as f64 * 0.01).collect();
    let fw = kde_density(&x, h, &wide).unwrap();
    let mass: f64 = fw.windows(2).map(|w| 0.005 * (w[0] + w[1])).sum();
    assert!((mass - 1.0).abs() < 1e-3);
}

#[test]
fn jarque_bera_size_and_exponential_skew() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let n = Normal::new(0.0, 1.0).unwrap();
    let below = (0..200)
        .filter(|_| {
            let x: Vec<f64> = (0..10_000).map(|_| n.sample(&mut rng)).collect();
            normality_diagnostics(&x).unwrap().jarque_bera < 5.99
        })
        .count();
    assert!((180..=200).contains(&below), "{below}");
    let e = Exp::new(1.0).unwrap();
    let x: Vec<f64> = (0..50_000).map(|_| e.sample(&mut rng)).collect();
    assert!((normality_diagnostics(&x).unwrap().skewness - 2.0).abs() < 0.1);
}
