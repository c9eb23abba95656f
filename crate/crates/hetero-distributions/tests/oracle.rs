//! Moment sequences and samplers checked against independent quadrature and
//! Monte-Carlo oracles.

use hetero_distributions::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Tanh-sinh quadrature on [a, b], step halved until two levels agree.
fn tanh_sinh<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let hp = std::f64::consts::FRAC_PI_2;
    let level = |step: f64| -> f64 {
        let mut s = 0.0;
        let n = (4.0 / step) as i64;
        for i in -n..=n {
            let t = i as f64 * step;
            let u = hp * t.sinh();
            let x = u.tanh();
            let w = hp * t.cosh() / u.cosh().powi(2);
            if w < 1e-300 || x.abs() >= 1.0 {
                continue;
            }
            s += w * f(c + h * x);
        }
        s * step * h
    };
    let mut step = 0.125;
    let mut prev = level(step);
    loop {
        step *= 0.5;
        let cur = level(step);
        if (cur - prev).abs() <= tol.max(1e-15 * cur.abs()) || step < 1e-3 {
            return cur;
        }
        prev = cur;
    }
}

/// `∫ x^k f` for the mixture: trigonometric part on [-1,1] split in panels,
/// singular part after `u = (1-x)^{1-d}`, which removes the pole.
fn mixture_moment_oracle(w: f64, a: &[f64], b: &[f64], d: f64, k: i32) -> f64 {
    let f1 = |x: f64| {
        let mut v = 0.5;
        for n in 0..a.len() {
            let t = (n as f64 + 1.0) * PI * x;
            v += a[n] * t.cos() + b[n] * t.sin();
        }
        v * x.powi(k)
    };
    let mut e1 = 0.0;
    for j in 0..16 {
        let lo = -1.0 + j as f64 / 8.0;
        e1 += tanh_sinh(&f1, lo, lo + 0.125, 1e-16);
    }
    let g = |u: f64| {
        let x = 1.0 - u.powf(1.0 / (1.0 - d));
        (2.0 - d) * x.powi(k + 1)
    };
    let e2 = tanh_sinh(&g, 0.0, 1.0, 1e-16);
    w * e1 + (1.0 - w) * e2
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs() + 1e-14
}

#[test]
fn mixture_moments_match_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..4 {
        let q = rng.random_range(1..=4usize);
        let a: Vec<f64> = (0..q).map(|_| rng.random_range(-0.1..0.1)).collect();
        let b: Vec<f64> = (0..q).map(|_| rng.random_range(-0.1..0.1)).collect();
        let w = rng.random_range(0.0..1.0);
        let d = rng.random_range(0.05..0.45);
        let dens = Density::mixture(w, a.clone(), b.clone(), d).unwrap();
        let m = moments_phi(&dens, 50).unwrap();
        for k in 0..=50 {
            let o = mixture_moment_oracle(w, &a, &b, d, k as i32);
            assert!(close(m[k], o, 1e-8), "k={k}: {} vs {o}", m[k]);
        }
    }
}

#[test]
fn high_frequency_fourier_moments_stay_accurate() {
    // n up to 12 puts nπ near 38: the recursion switches direction inside k ≤ 50.
    let a: Vec<f64> = (0..12).map(|n| 0.02 * (-1f64).powi(n)).collect();
    let b: Vec<f64> = (0..12).map(|n| 0.015 / (n as f64 + 1.0)).collect();
    let dens = Density::mixture(1.0, a.clone(), b.clone(), 0.3).unwrap();
    let m = moments_phi(&dens, 50).unwrap();
    for k in 0..=50 {
        let o = mixture_moment_oracle(1.0, &a, &b, 0.3, k as i32);
        assert!(close(m[k], o, 1e-8), "k={k}: {} vs {o}", m[k]);
    }
}

#[test]
fn pure_cosine_odd_moments_vanish() {
    let dens = Density::mixture(1.0, vec![0.3], vec![0.0], 0.2).unwrap();
    let m = moments_phi(&dens, 41).unwrap();
    for k in (1..=41).step_by(2) {
        assert_eq!(m[k], 0.0);
    }
}

#[test]
fn singular_moments_decrease_and_match_gamma_ratio() {
    let s = Density::Singular(SingularBeta::new(0.5).unwrap());
    let m = moments_phi(&s, 200).unwrap();
    assert!((m[1] - 0.8).abs() < 1e-15);
    assert!(m.windows(2).all(|w| w[1] <= w[0]));
    // Γ(k+2)Γ(3-d)/Γ(k+3-d) at k = 200, via log-gamma
    let lg = statrs::function::gamma::ln_gamma;
    let exact = (lg(202.0) + lg(2.5) - lg(202.5)).exp();
    assert!(close(m[200], exact, 1e-12));
}

#[test]
fn parametric_moments_match_quadrature() {
    // stretched Beta: u = (1-x)^q removes the pole at 1
    let (p, q) = (5.0, 0.75);
    let norm = 2f64.powf(p + q - 1.0) * statrs::function::beta::beta(p, q);
    let m = moments_phi(&Density::stretched_beta(p, q), 50).unwrap();
    for k in 0..=50 {
        let g = |u: f64| {
            let x = 1.0 - u.powf(1.0 / q);
            x.powi(k) * (1.0 + x).powf(p - 1.0) / q
        };
        let o = tanh_sinh(&g, 0.0, 2f64.powf(q), 1e-16) / norm;
        assert!(
            close(m[k as usize], o, 1e-8),
            "stretched k={k}: {} vs {o}",
            m[k as usize]
        );
    }

    // Beta(-α, 1+α): poles at both ends; split at ½ and substitute on each side
    let alpha = -0.3;
    let bn = statrs::function::beta::beta(-alpha, 1.0 + alpha);
    let m = moments_phi(&Density::beta_neg_alpha(alpha), 50).unwrap();
    for k in 0..=50 {
        let left = |u: f64| {
            let x = u.powf(1.0 / -alpha);
            x.powi(k) * (1.0 - x).powf(alpha) / -alpha
        };
        let right = |u: f64| {
            let x = 1.0 - u.powf(1.0 / (1.0 + alpha));
            x.powi(k) * x.powf(-alpha - 1.0) / (1.0 + alpha)
        };
        let o = (tanh_sinh(&left, 0.0, 0.5f64.powf(-alpha), 1e-16)
            + tanh_sinh(&right, 0.0, 0.5f64.powf(1.0 + alpha), 1e-16))
            / bn;
        assert!(
            close(m[k as usize], o, 1e-8),
            "beta k={k}: {} vs {o}",
            m[k as usize]
        );
    }

    // bell mixture
    let (w, mu, sigma) = (0.5, 0.2, 0.15);
    let dens = Density::Parametric(ParametricDensity::BellMixture {
        p,
        q,
        w,
        m: mu,
        sigma,
    });
    let mb = moments_phi(&dens, 50).unwrap();
    let ms = moments_phi(&Density::stretched_beta(p, q), 50).unwrap();
    let kn = tanh_sinh(
        &|x: f64| (1.0 - x * x) * (-0.5 * ((x - mu) / sigma).powi(2)).exp(),
        -1.0,
        1.0,
        1e-16,
    );
    for k in 0..=50 {
        let bell = tanh_sinh(
            &|x: f64| x.powi(k) * (1.0 - x * x) * (-0.5 * ((x - mu) / sigma).powi(2)).exp(),
            -1.0,
            1.0,
            1e-16,
        ) / kn;
        let o = w * ms[k as usize] + (1.0 - w) * bell;
        assert!(
            close(mb[k as usize], o, 1e-8),
            "bell k={k}: {} vs {o}",
            mb[k as usize]
        );
    }
}

#[test]
fn beta_neg_alpha_generating_function() {
    // E[1/(1 - zφ)] = (1-z)^α for Beta(-α, 1+α)
    let alpha = -0.3;
    let m = moments_phi(&Density::beta_neg_alpha(alpha), 4000).unwrap();
    let z: f64 = 0.6;
    let series: f64 = m
        .iter()
        .enumerate()
        .map(|(k, v)| v * z.powi(k as i32))
        .sum();
    assert!(close(series, (1.0 - z).powf(alpha), 1e-12));
}

#[test]
fn power_law_moments_match_quadrature() {
    let beta = 1.5;
    let d = 0.3;
    let dens = Density::mixture(0.5, vec![0.2], vec![-0.1], d).unwrap();
    let t = MomentTable::build(&dens, &Coupling::PowerLaw { beta }, 30).unwrap();
    for k in 0..=30 {
        let f1 = |x: f64| {
            (0.5 + 0.2 * (PI * x).cos() - 0.1 * (PI * x).sin()) * x.powi(k) * (1.0 - x).powf(beta)
        };
        let e1 = tanh_sinh(&f1, -1.0, 1.0, 1e-16);
        let g = |u: f64| {
            let x = 1.0 - u.powf(1.0 / (1.0 - d));
            (2.0 - d) * x.powi(k + 1) * (1.0 - x).powf(beta)
        };
        let e2 = tanh_sinh(&g, 0.0, 1.0, 1e-16);
        let o = 0.5 * e1 + 0.5 * e2;
        assert!(
            close(t.mpsiphi[k as usize], o, 1e-8),
            "k={k}: {} vs {o}",
            t.mpsiphi[k as usize]
        );
    }
}

#[test]
fn uniform_sample_mean() {
    let d = Density::Fourier(FourierDensity::uniform());
    let s = sample_phi_psi(&d, &Coupling::Rational, 100_000, 1).unwrap();
    let mean = s.iter().map(|p| p.0).sum::<f64>() / s.len() as f64;
    assert!(mean.abs() < 0.01, "{mean}");
}

#[test]
fn singular_sample_mean() {
    let d = Density::Singular(SingularBeta::new(0.4).unwrap());
    let s = sample_phi_psi(&d, &Coupling::Linear { alpha: 0.3 }, 100_000, 2).unwrap();
    let mean = s.iter().map(|p| p.0).sum::<f64>() / s.len() as f64;
    assert!((mean - 2.0 / 2.6).abs() < 0.01, "{mean}");
}

#[test]
fn sampler_matches_table_in_kolmogorov_distance() {
    let d = Density::mixture(0.5, vec![0.2], vec![0.1], 0.4).unwrap();
    let table = TabulatedCdf::new(&d).unwrap();
    let mut x: Vec<f64> = sample_phi_psi(&d, &Coupling::Rational, 1_000_000, 3)
        .unwrap()
        .into_iter()
        .map(|p| p.0)
        .collect();
    x.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = x.len() as f64;
    let mut dmax = 0.0f64;
    for (i, v) in x.iter().enumerate() {
        let f = table.cdf(*v);
        dmax = dmax
            .max((f - i as f64 / n).abs())
            .max(((i + 1) as f64 / n - f).abs());
    }
    assert!(dmax < 2e-3, "{dmax}");
    // the table itself tracks the exact CDF
    for i in 0..=200 {
        let v = -1.0 + i as f64 / 100.0;
        let e = (table.cdf(v) - density_cdf(&d, v)).abs();
        // linear interpolation between 4,097 nodes
        assert!(e < 1e-5, "x={v}: {e:e}");
    }
}
