//! Fits before and after the peak of a price path.

use hetvol::calibration::{split_at_peak, step_by_step_fit, FitOptions, ThetaVector};
use hetvol::hetero_process::simulate_aggregate;

fn main() {
    let truth = ThetaVector::new(vec![0.15], vec![-0.1], 0.3, 0.6, 0.5, 0.3).unwrap();
    let omega = simulate_aggregate(&truth.model().unwrap(), 3000, 0, 5)
        .unwrap()
        .series
        .omega;
    // a price that rises for 1800 days and then falls
    let price: Vec<f64> = (0..omega.len())
        .map(|i| 100.0 + 50.0 * (PI_OVER * i as f64).sin())
        .collect();
    let split = split_at_peak(&price).unwrap();
    println!("peak at day {}", split.peak);
    let opts = FitOptions {
        l: 60,
        ..FitOptions::default()
    };
    for (label, range) in [("before", split.pre), ("after", split.post)] {
        match step_by_step_fit(&omega[range.clone()], 1, &opts) {
            Ok(r) => println!("{label:>6}: T = {}, d = {}", range.len(), r.d_with_se()),
            Err(e) => println!("{label:>6}: {e}"),
        }
    }
}

const PI_OVER: f64 = std::f64::consts::PI / 3600.0;
