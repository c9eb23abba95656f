//! Model autocorrelations by the spectral (FFT) and MA routes, and the
//! memory parameter implied by their tail.

use hetvol::hetero_distributions::{Coupling, Density};
use hetvol::hetero_process::{
    acf_via_fft, acf_via_ma, ma_coefficients_fast, tail_exponent, ModelSpec,
};

fn main() {
    let density = Density::mixture(0.6, vec![0.15], vec![-0.1], 0.3).unwrap();
    let model = ModelSpec::new(density, Coupling::Linear { alpha: 0.3 }, 0.5).unwrap();
    println!("memory parameter {:?}", model.memory_parameter());

    let fft = acf_via_fft(&model, 1 << 18, 1000).unwrap();
    let ma = acf_via_ma(
        &ma_coefficients_fast(&model, 1 << 16)
            .unwrap()
            .with_tail(&model),
        0.5,
        1000,
    );
    println!("{:>5} {:>14} {:>14}", "h", "ρ FFT", "ρ MA");
    for h in [1, 2, 5, 10, 50, 100, 500, 1000] {
        println!("{h:>5} {:>14.10} {:>14.10}", fft.rho[h], ma.rho[h]);
    }
    let tail = tail_exponent(&fft.rho, 100..=1000).unwrap();
    println!(
        "tail slope {:.3}, implied d {:.3}",
        tail.slope, tail.implied_d
    );
}
