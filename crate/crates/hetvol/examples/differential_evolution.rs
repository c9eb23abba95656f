//! Global fit by differential evolution against the Nelder–Mead sequence.

use hetvol::calibration::{
    de_fit, step_by_step_fit, DeOptions, FitOptions, ThetaVector, WeightingPolicy,
};
use hetvol::hetero_process::simulate_aggregate;

fn main() {
    let truth = ThetaVector::new(vec![0.15], vec![-0.1], 0.3, 0.6, 0.5, 0.3).unwrap();
    let x = simulate_aggregate(&truth.model().unwrap(), 4000, 0, 3)
        .unwrap()
        .series
        .omega;
    let opts = FitOptions {
        l: 40,
        weighting: WeightingPolicy::Identity,
        skip_covariance: true,
        ..FitOptions::default()
    };
    let nm = step_by_step_fit(&x, 1, &opts).unwrap();
    let de = de_fit(
        &x,
        1,
        &opts,
        &DeOptions {
            generations: 200,
            seed: 1,
            ..DeOptions::default()
        },
    )
    .unwrap();
    println!(
        "Nelder–Mead:            objective {:.6e}, d = {:.4}",
        nm.objective_value, nm.theta_hat.d
    );
    println!(
        "differential evolution: objective {:.6e}, d = {:.4}",
        de.objective_value, de.theta_hat.d
    );
}
