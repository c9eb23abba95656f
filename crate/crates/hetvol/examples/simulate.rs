//! Aggregate (MA) and agent-panel simulation of the same model.

use hetvol::hetero_distributions::{Coupling, Density};
use hetvol::hetero_process::{simulate_aggregate, simulate_panel, AgentPanel, ModelSpec};
use hetvol::volatility_core::sample_acf;

fn main() {
    let density = Density::mixture(0.6, vec![0.15], vec![-0.1], 0.3).unwrap();
    let model = ModelSpec::new(density, Coupling::Linear { alpha: 0.3 }, 0.5)
        .unwrap()
        .with_mean_omega(-4.6);
    let agg = simulate_aggregate(&model, 4000, 0, 7).unwrap();
    println!(
        "aggregate: K = {}, omitted variance {:.2e}",
        agg.truncation, agg.truncation_bias
    );

    let mut panel = AgentPanel::draw(&model, 10_000, 0.0, 7).unwrap();
    println!(
        "panel: {} agents, spectral radius {:.6}",
        panel.n,
        panel.spectral_radius()
    );
    let sim = simulate_panel(&mut panel, &model, 4000, 2000, 7, 0).unwrap();

    let (a, p) = (
        sample_acf(&agg.series.omega, 50).unwrap(),
        sample_acf(&sim.series.omega, 50).unwrap(),
    );
    println!("{:>3} {:>10} {:>10}", "h", "aggregate", "panel");
    for h in [1, 2, 5, 10, 20, 50] {
        println!("{h:>3} {:>10.4} {:>10.4}", a[h], p[h]);
    }
}
