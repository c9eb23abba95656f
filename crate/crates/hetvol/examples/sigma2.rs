//! Asymptotic covariance of the autocovariance differences: white noise
//! closed forms and a long-memory model.

use hetvol::calibration::{sigma2_from_density, sigma2_matrix, Sigma2Form, ThetaVector};
use std::f64::consts::PI;

fn main() {
    let flat = |_: f64| 1.0 / (2.0 * PI);
    for form in [Sigma2Form::Bartlett, Sigma2Form::Shifted] {
        let s = sigma2_from_density(flat, 4, form).unwrap();
        println!("white noise, {form:?}:\n{:.6}", s.matrix);
    }
    let theta = ThetaVector::new(vec![0.15], vec![-0.1], 0.3, 0.6, 0.5, 0.3).unwrap();
    let s = sigma2_matrix(&theta, 4, Sigma2Form::Bartlett).unwrap();
    println!("d = 0.3 model:\n{:.6}", s.matrix);
}
