//! Spectral density of the aggregate and its log-log slope near zero.

use hetvol::hetero_distributions::{Coupling, Density};
use hetvol::hetero_process::{spectral_density, ModelSpec};

fn main() {
    let density = Density::mixture(0.6, vec![0.15], vec![-0.1], 0.3).unwrap();
    let model = ModelSpec::new(density, Coupling::Linear { alpha: 0.3 }, 1.0).unwrap();
    let grid: Vec<f64> = (0..=8).map(|i| 10f64.powi(-i)).collect();
    let f = spectral_density(&model, &grid).unwrap();
    for w in grid.windows(2).zip(f.windows(2)) {
        let ((l1, l0), (f1, f0)) = ((w.0[0], w.0[1]), (w.1[0], w.1[1]));
        println!(
            "λ in [{l0:.0e}, {l1:.0e}]: f from {f0:.4e} to {f1:.4e}, slope {:.4}",
            (f1 / f0).ln() / (l1 / l0).ln()
        );
    }
    println!("slope tends to −2d = −0.6");
}
