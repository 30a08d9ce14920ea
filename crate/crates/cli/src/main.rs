use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use alphadiv::ar1::{self, Ar1Config};
use alphadiv::bench::{self, ExperimentConfig, MixtureDgp, TableFormat};
use alphadiv::density::{bandwidth_silverman, KernelSpec};
use alphadiv::divergence::{estimate_divergence, DensityModel, DivergenceOrder};
use alphadiv::inference::model_select;
use alphadiv::Sample;
use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

const SEED_ENV: &str = "ALPHADIV_SEED";

/// Alpha-divergence estimation, goodness-of-fit and model-selection experiments.
#[derive(Parser)]
#[command(name = "alphadiv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the Monte Carlo model-selection study and emit a table.
    Experiment {
        /// JSON config; missing fields take their defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        pi: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        level: Option<f64>,
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Use the 200-replication preset.
        #[arg(long)]
        desk: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Estimate D_alpha between the KDE of one simulated sample and a model.
    Divergence {
        /// normal:MEAN,VAR | mixture:PI[,WIDEVAR] | ar1:PHI,SIGMA2 (differenced)
        #[arg(long)]
        dgp: String,
        /// normal:MEAN,VAR | mixture:PI[,WIDEVAR] | ar1m1:SIGMA2 | ar1m2:SIGMA2,PHI
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Simulate an AR(1) path and optionally choose between M1 and M2.
    Ar1Sim {
        #[arg(long, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma2: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        burn_in: usize,
        /// Run model selection on the differenced series.
        #[arg(long)]
        select: bool,
        /// phi used by M2; defaults to --phi when stationary, else 0.5.
        #[arg(long, allow_negative_numbers = true)]
        m2_phi: Option<f64>,
    },
    /// Emit histogram, density-curve and per-n series data for plotting.
    Figure {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        pi: Option<f64>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => TableFormat::Csv,
            Format::Json => TableFormat::Json,
        }
    }
}

/// Flag, then environment, then whatever the config already holds.
fn resolve_seed(flag: Option<u64>, fallback: u64) -> anyhow::Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| alphadiv::Error::InvalidParameter {
                name: "ALPHADIV_SEED",
                reason: format!("{v:?} is not an unsigned integer"),
            })
            .map_err(Into::into),
        Err(_) => Ok(fallback),
    }
}

fn load_config(path: Option<&Path>) -> anyhow::Result<ExperimentConfig> {
    match path {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(ExperimentConfig::from_json_str(&text)?)
        }
        None => Ok(ExperimentConfig::default()),
    }
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().write_all(bytes).context("writing stdout"),
    }
}

fn parse_args(spec: &str) -> anyhow::Result<(&str, Vec<f64>)> {
    let (name, rest) = spec.split_once(':').ok_or_else(|| anyhow!("spec {spec:?} lacks ':'"))?;
    let args = rest
        .split(',')
        .map(|a| a.trim().parse::<f64>().map_err(|_| anyhow!("bad number {a:?} in {spec:?}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok((name, args))
}

fn parse_model(spec: &str) -> anyhow::Result<DensityModel> {
    let (name, a) = parse_args(spec)?;
    let model = match (name, a.as_slice()) {
        ("normal", [m, v]) => DensityModel::gaussian(*m, *v)?,
        ("mixture", [pi]) => MixtureDgp::new(*pi, 2.0)?.density(),
        ("mixture", [pi, wide]) => MixtureDgp::new(*pi, *wide)?.density(),
        ("ar1m1", [s2]) => ar1::m1_density(*s2)?,
        ("ar1m2", [s2, phi]) => ar1::m2_density(*s2, *phi)?,
        _ => bail!("unrecognised model spec {spec:?}"),
    };
    Ok(model)
}

fn draw(spec: &str, n: usize, seed: u64) -> anyhow::Result<Sample> {
    let (name, a) = parse_args(spec)?;
    let sample = match (name, a.as_slice()) {
        ("normal", [m, v]) => {
            DensityModel::gaussian(*m, *v)?;
            let (m, sd) = (*m, v.sqrt());
            MixtureDgp::new(1.0, 2.0)?.sample(n, seed).map(|z| m + sd * z)
        }
        ("mixture", [pi]) => MixtureDgp::new(*pi, 2.0)?.sample(n, seed),
        ("mixture", [pi, wide]) => MixtureDgp::new(*pi, *wide)?.sample(n, seed),
        ("ar1", [phi, s2]) => {
            let path = ar1::simulate_ar1(&Ar1Config::new(*phi, 0.0, *s2, n, seed))?;
            ar1::difference(&path)?.into_sample()
        }
        _ => bail!("unrecognised dgp spec {spec:?}"),
    };
    Ok(sample)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Experiment {
            config,
            pi,
            alpha,
            level,
            reps,
            seed,
            desk,
            out,
            format,
        } => {
            let mut cfg = load_config(config.as_deref())?;
            if desk {
                cfg.replications = bench::DESK_REPLICATIONS;
            }
            if let Some(v) = pi {
                cfg.pi = v;
            }
            if let Some(v) = alpha {
                cfg.order_alpha = DivergenceOrder::new(v)?;
            }
            if let Some(v) = level {
                cfg.level = v;
            }
            if let Some(v) = reps {
                cfg.replications = v;
            }
            cfg.seed = resolve_seed(seed, cfg.seed)?;
            cfg.validate()?;
            let rows = bench::run_experiment(&cfg)?;
            write_output(out.as_deref(), &bench::emit_table(&rows, format.into())?)
        }
        Command::Divergence {
            dgp,
            model,
            n,
            alpha,
            seed,
        } => {
            let seed = resolve_seed(seed, bench::DEFAULT_SEED)?;
            let model = parse_model(&model)?;
            let order = DivergenceOrder::new(alpha)?;
            let sample = draw(&dgp, n, seed)?;
            let h = bandwidth_silverman(&sample)?;
            let est = estimate_divergence(&sample, &model, order, KernelSpec::gaussian(), h)?;
            let mut bytes = serde_json::to_vec_pretty(&est)?;
            bytes.push(b'\n');
            write_output(None, &bytes)
        }
        Command::Ar1Sim {
            phi,
            mu,
            sigma2,
            n,
            seed,
            burn_in,
            select,
            m2_phi,
        } => {
            let seed = resolve_seed(seed, bench::DEFAULT_SEED)?;
            let cfg = Ar1Config {
                burn_in,
                ..Ar1Config::new(phi, mu, sigma2, n, seed)
            };
            let path = ar1::simulate_ar1(&cfg)?;
            let w = ar1::difference(&path)?.into_sample();
            let m2_phi = m2_phi.unwrap_or(if phi.abs() < 1.0 { phi } else { 0.5 });
            let selection = if select {
                let m1 = ar1::m1_density(sigma2)?;
                let m2 = ar1::m2_density(sigma2, m2_phi)?;
                let h = bandwidth_silverman(&w)?;
                Some(model_select(&w, &m1, &m2, DivergenceOrder::HALF, 0.05, KernelSpec::gaussian(), h)?)
            } else {
                None
            };
            let report = json!({
                "config": cfg,
                "path": path.values(),
                "w": w.values(),
                "diagnostics": {
                    "sample_variance_w": w.variance(),
                    "m1_variance": sigma2,
                    "m2_phi": m2_phi,
                    "m2_variance": ar1::m2_variance(sigma2, m2_phi),
                    "true_variance_w": ar1::differenced_variance(sigma2, phi),
                },
                "selection": selection,
            });
            let mut bytes = serde_json::to_vec_pretty(&report)?;
            bytes.push(b'\n');
            write_output(None, &bytes)
        }
        Command::Figure {
            config,
            pi,
            n,
            seed,
            out,
        } => {
            let mut cfg = load_config(config.as_deref())?;
            if let Some(v) = pi {
                cfg.pi = v;
            }
            cfg.seed = resolve_seed(seed, cfg.seed)?;
            write_output(out.as_deref(), &bench::emit_figure_data(&cfg, n)?)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<alphadiv::Error>() {
        Some(e) if e.is_numerical() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
