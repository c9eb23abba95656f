use clap::{Args, Parser, Subcommand};
use hetvol::commands;
use hetvol::config::RunConfig;
use hetvol::csvio::{self, Table};
use hetvol::{CliError, Result};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hetvol",
    version,
    about = "Log-volatility long memory from heterogeneous agents"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// TOML file with [data], [model], [fit] and [simulate] sections.
    #[arg(long, short)]
    config: Option<PathBuf>,
    /// Output CSV; standard output when absent or "-".
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Daily realized variance and log-volatility from intraday prices.
    Rv {
        #[command(flatten)]
        common: Common,
        /// Intraday `date,time,price` CSV.
        #[arg(long, short)]
        input: Option<PathBuf>,
    },
    /// Sample autocovariances of a log-volatility series.
    Acf {
        #[command(flatten)]
        common: Common,
        #[arg(long, short)]
        input: Option<PathBuf>,
        #[arg(long)]
        lags: Option<usize>,
    },
    /// Model autocovariances.
    ModelAcf {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lags: Option<usize>,
    },
    /// Model spectral density on (0, π].
    Spectrum {
        #[command(flatten)]
        common: Common,
    },
    /// Simulated log-volatility path.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Estimate θ; writes the parameter table and the density band.
    Fit {
        #[command(flatten)]
        common: Common,
        #[arg(long, short)]
        input: Option<PathBuf>,
        /// Density band CSV.
        #[arg(long)]
        band: Option<PathBuf>,
        #[arg(long)]
        lags: Option<usize>,
    },
    /// Model, GPH and R/S estimates of d for each input series.
    Semiparam {
        #[command(flatten)]
        common: Common,
        /// Log-volatility CSVs; the asset name is the file stem.
        #[arg(long = "input", short, num_args = 1..)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        lags: Option<usize>,
    },
    /// Fits on the whole series and before and after the price peak.
    Bubble {
        #[command(flatten)]
        common: Common,
        /// Intraday `date,time,price` CSV.
        #[arg(long)]
        prices: Option<PathBuf>,
        /// Log-volatility CSV.
        #[arg(long, short)]
        input: Option<PathBuf>,
        #[arg(long)]
        lags: Option<usize>,
    },
    /// Monte-Carlo recovery of d from simulated paths.
    Replicate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn note(lines: &[String]) {
    for l in lines {
        eprintln!("{l}");
    }
}

fn path_or(flag: Option<PathBuf>, cfg: &Option<PathBuf>, what: &str) -> Result<PathBuf> {
    flag.or_else(|| cfg.clone())
        .ok_or_else(|| CliError::Usage(format!("{what} is required (flag or [data] key)")))
}

fn out_path(common: &Common, cfg: &RunConfig) -> Option<PathBuf> {
    common.output.clone().or_else(|| cfg.data.output.clone())
}

fn write(table: &Table, path: Option<&Path>) -> Result<()> {
    table.write(path)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Rv { common, input } => {
            let cfg = RunConfig::load_or_default(common.config.as_deref())?;
            let input = path_or(input, &cfg.data.input, "--input")?;
            let r = commands::rv(&csvio::read_intraday_file(&input)?, cfg.data.min_interval);
            note(&r.notes);
            write(&r.table, out_path(&common, &cfg).as_deref())
        }
        Command::Acf {
            common,
            input,
            lags,
        } => {
            let cfg = RunConfig::load_or_default(common.config.as_deref())?;
            let s = csvio::read_log_vol_file(&path_or(input, &cfg.data.input, "--input")?)?;
            let t = commands::sample_acf_table(&s.omega, lags.unwrap_or(cfg.data.lags))?;
            write(&t, out_path(&common, &cfg).as_deref())
        }
        Command::ModelAcf { common, lags } => {
            let cfg = RunConfig::load_or_default(common.config.as_deref())?;
            let model = cfg.model()?.spec()?;
            let d = &cfg.data;
            let (t, notes) = commands::model_acf_table(
                &model,
                lags.unwrap_or(d.lags),
                d.acf_method,
                d.fft_size,
                d.ma_terms,
            )?;
            note(&notes);
            write(&t, out_path(&common, &cfg).as_deref())
        }
        Command::Spectrum { common } => {
            let cfg = RunConfig::load_or_default(common.config.as_deref())?;
            let t = commands::spectrum_table(&cfg.model()?.spec()?, cfg.data.grid_points)?;
            write(&t, out_path(&common, &cfg).as_deref())
        }
        Command::Simulate { common, t, seed } => {
            let mut cfg = RunConfig::load_or_default(common.config.as_deref())?;
            cfg.simulate.t = t.unwrap_or(cfg.simulate.t);
            cfg.simulate.seed = seed.unwrap_or(cfg.simulate.seed);
            let (s, notes) = commands::simulate(&cfg.model()?.spec()?, &cfg.simulate)?;
            note(&notes);
            write(
                &csvio::log_vol_table(&s),
                out_path(&common, &cfg).as_deref(),
            )
        }
        Command::Fit {
            common,
            input,
            band,
            lags,
        } => {
            let mut cfg = RunConfig::load_or_default(common.config.as_deref())?;
            cfg.fit.lags = lags.unwrap_or(cfg.fit.lags);
            let s = csvio::read_log_vol_file(&path_or(input, &cfg.data.input, "--input")?)?;
            let r = commands::fit(&s, &cfg.fit)?;
            note(&r.notes);
            write(&r.table, out_path(&common, &cfg).as_deref())?;
            match (&r.band, band.or_else(|| cfg.data.band.clone())) {
                (Some(b), Some(p)) => write(b, Some(&p)),
                (None, Some(_)) => {
                    eprintln!("warning: no density band without a covariance");
                    Ok(())
                }
                _ => Ok(()),
            }
        }
        Command::Semiparam {
            common,
            inputs,
            lags,
        } => {
            let mut cfg = RunConfig::load_or_default(common.config.as_deref())?;
            cfg.fit.lags = lags.unwrap_or(cfg.fit.lags);
            let inputs = if inputs.is_empty() {
                vec![path_or(None, &cfg.data.input, "--input")?]
            } else {
                inputs
            };
            let mut t = Table::new(&["asset", "d_model", "se_model", "d_gph", "se_gph", "d_hurst"]);
            for p in inputs {
                let asset = p
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                let s = csvio::read_log_vol_file(&p)?;
                let (row, notes) = commands::semiparam_row(&asset, &s.omega, &cfg.fit)?;
                note(&notes);
                t.push(row);
            }
            write(&t, out_path(&common, &cfg).as_deref())
        }
        Command::Bubble {
            common,
            prices,
            input,
            lags,
        } => {
            let mut cfg = RunConfig::load_or_default(common.config.as_deref())?;
            cfg.fit.lags = lags.unwrap_or(cfg.fit.lags);
            let p = csvio::read_intraday_file(&path_or(prices, &cfg.data.prices, "--prices")?)?;
            let s = csvio::read_log_vol_file(&path_or(input, &cfg.data.input, "--input")?)?;
            let r = commands::bubble(&p, &s, &cfg.fit)?;
            note(&r.notes);
            write(&r.table, out_path(&common, &cfg).as_deref())
        }
        Command::Replicate { common, t, seed } => {
            let mut cfg = RunConfig::load_or_default(common.config.as_deref())?;
            cfg.simulate.t = t.unwrap_or(cfg.simulate.t);
            cfg.simulate.seed = seed.unwrap_or(cfg.simulate.seed);
            let m = cfg.model()?;
            let spec = m.spec()?;
            let d_true = m.d.or_else(|| spec.memory_parameter()).ok_or_else(|| {
                CliError::Config("replicate needs model.d or a long-memory model".into())
            })?;
            let r = commands::replicate(&spec, d_true, &cfg.fit, &cfg.simulate);
            note(&r.notes);
            write(&r.table, out_path(&common, &cfg).as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
