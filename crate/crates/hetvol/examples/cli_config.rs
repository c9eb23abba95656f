//! Parsing a run configuration and producing the model tables the binary writes.

use hetvol::commands::{model_acf_table, spectrum_table};
use hetvol::config::AcfMethodConfig;
use hetvol::RunConfig;

const CONFIG: &str = r#"
[model]
density = "mixture"
a = [0.15]
b = [-0.1]
w = 0.6
d = 0.3
coupling = "linear"
alpha = 0.3
sigma_eps = 0.5

[fit]
q = 1
lags = 60
"#;

fn main() {
    let cfg = RunConfig::parse(CONFIG).unwrap();
    let model = cfg.model().unwrap().spec().unwrap();
    let (acf, notes) = model_acf_table(&model, 5, AcfMethodConfig::Fft, 1 << 16, 1 << 14).unwrap();
    notes.iter().for_each(|n| eprintln!("{n}"));
    print!("{}", acf.to_csv());
    print!("{}", spectrum_table(&model, 4).unwrap().to_csv());
    match RunConfig::parse("[fit]\nq = 1\nunknown = 2\n") {
        Err(e) => println!("rejected: {e} (exit code {})", e.exit_code()),
        Ok(_) => unreachable!(),
    }
}
