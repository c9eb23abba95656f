//! Number of autocovariance differences `L` minimising the asymptotic covariance.

use hetvol::calibration::{optimal_l, Sigma2Form, ThetaVector, WeightingPolicy};

fn main() {
    let theta = ThetaVector::new(vec![0.15], vec![-0.1], 0.3, 0.6, 0.5, 0.3).unwrap();
    let choice = optimal_l(
        &theta,
        &[10, 20, 40, 80, 120],
        WeightingPolicy::Sigma2,
        Sigma2Form::Bartlett,
    )
    .unwrap();
    for (l, norm) in &choice.profile {
        println!("L = {l:>3}: ‖A_L‖ = {norm:.4}");
    }
    println!("L* = {}", choice.l_star);
}
