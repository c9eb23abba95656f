//! Realized variance and daily log-volatility from simulated one-minute prices.

use hetvol::volatility_core::{
    build_rv_series, compute_realized_variance, log_vol_series, rv_error_band, IntradayDay,
    IntradaySeries,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let days: Vec<IntradayDay> = (0..5)
        .map(|d| {
            // daily volatility drifts from 1% to 2%
            let sigma = 0.01 * (1.0 + d as f64 / 4.0);
            let z = Normal::new(0.0, sigma / 390f64.sqrt()).unwrap();
            let mut p = 100.0;
            let obs = (0..=390u32)
                .map(|m| {
                    if m > 0 {
                        p *= f64::exp(z.sample(&mut rng));
                    }
                    (34_200 + 60 * m, p)
                })
                .collect();
            IntradayDay::new(format!("2024-01-0{}", d + 1), obs)
        })
        .collect();
    let series = IntradaySeries {
        symbol: "SIM".into(),
        days,
    };

    let (rv, rejected) = build_rv_series(&series, None);
    let lv = log_vol_series(&rv).unwrap();
    println!(
        "{} days, {} rejected, mean ω {:.4}",
        rv.rv.len(),
        rejected.len(),
        lv.mean_omega
    );
    for (day, (v, w)) in series.days.iter().zip(rv.rv.iter().zip(&lv.omega)) {
        let band = rv_error_band(&compute_realized_variance(day).unwrap().returns).unwrap();
        println!(
            "{}  rv {v:.3e} ± {:.1e}  ω {w:.4}",
            day.date,
            1.96 * band.plain
        );
    }
}
