//! Step-by-step minimum-distance fit of a simulated path, with standard
//! errors and a pointwise band for the estimated density.

use hetvol::calibration::{density_confidence_band, step_by_step_fit, FitOptions, ThetaVector};
use hetvol::hetero_process::simulate_aggregate;

fn main() {
    let truth = ThetaVector::new(vec![0.15], vec![-0.1], 0.3, 0.6, 0.5, 0.3).unwrap();
    let sim = simulate_aggregate(&truth.model().unwrap(), 4000, 0, 21).unwrap();
    let r = step_by_step_fit(&sim.series.omega, 1, &FitOptions::default()).unwrap();
    for s in &r.stages {
        println!(
            "stage q = {} {:?}: objective {:.4e} after {} iterations",
            s.q, s.weighting, s.objective, s.iterations
        );
    }
    let names = ThetaVector::names(1);
    for ((n, v), (t, se)) in names
        .iter()
        .zip(r.theta_hat.to_vec())
        .zip(truth.to_vec().into_iter().zip(&r.se))
    {
        println!("{n:>10} {v:>9.4} ({se:.4})  truth {t}");
    }
    if !r.boundary.is_empty() {
        println!("near the boundary of Θ: {:?}", r.boundary);
    }
    if let Some(a) = &r.a_l {
        let x = [-0.9, -0.5, 0.0, 0.5, 0.9];
        let band = density_confidence_band(&r.theta_hat, a, r.t, &x, 0.95).unwrap();
        for i in 0..x.len() {
            println!(
                "f({:>4}) = {:.3} in [{:.3}, {:.3}], truth {:.3}",
                x[i],
                band.f[i],
                band.lo[i],
                band.hi[i],
                truth.density(x[i])
            );
        }
    }
}
