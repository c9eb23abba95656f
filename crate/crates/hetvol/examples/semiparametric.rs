//! GPH and rescaled-range estimates of `d` on fractional noise and on model output.

use hetvol::calibration::ThetaVector;
use hetvol::hetero_process::simulate_aggregate;
use hetvol::semiparam::{arfima_series, gph_estimate, rs_hurst};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn main() {
    let t = 8192;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let eps: Vec<f64> = (0..4 * t)
        .map(|_| StandardNormal.sample(&mut rng))
        .collect();
    let arfima = arfima_series(&eps, 0.3, t).unwrap();
    let model = ThetaVector::new(vec![0.15], vec![-0.1], 0.3, 0.6, 0.5, 0.3)
        .unwrap()
        .model()
        .unwrap();
    let hetero = simulate_aggregate(&model, t, 0, 4).unwrap().series.omega;
    for (name, x) in [
        ("ARFIMA(0, 0.3, 0)", &arfima),
        ("heterogeneous agents, d = 0.3", &hetero),
    ] {
        let g = gph_estimate(x, None).unwrap();
        let h = rs_hurst(x, None).unwrap();
        println!(
            "{name}: GPH d = {:.3} ({:.3}) with m = {}, R/S H = {:.3}, d = {:.3}",
            g.d_gph, g.se, g.m, h.h, h.d_hurst
        );
    }
}
