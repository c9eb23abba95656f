//! Moments `E[φ^k]` and `E[ψφ^k]` for a mixture density under linear coupling.

use hetvol::hetero_distributions::{validate_density, Coupling, Density, MomentTable};

fn main() {
    let density = Density::mixture(0.6, vec![0.15], vec![-0.1], 0.3).unwrap();
    let coupling = Coupling::Linear { alpha: 0.3 };
    let report = validate_density(&density, &coupling);
    println!(
        "stationary {}, long memory {}",
        report.stationary, report.long_memory
    );
    for c in &report.checks {
        println!(
            "  {:<24} {}  {}",
            c.name,
            if c.passed { "ok" } else { "FAILED" },
            c.detail
        );
    }
    let m = MomentTable::build(&density, &coupling, 50).unwrap();
    println!("{:>3} {:>14} {:>14}", "k", "E[φ^k]", "E[ψφ^k]");
    for k in [0, 1, 2, 5, 10, 20, 50] {
        println!("{k:>3} {:>14.10} {:>14.10}", m.mphi[k], m.mpsiphi[k]);
    }
}
