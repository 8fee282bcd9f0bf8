//! `dtqw`: run quantum-walk circuits and write CSV/JSON results.
//!
//! Exit codes: 0 success, 2 usage, 3 config, 4 runtime.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dtqw_core::walks::Scheme;

use commands::{MetricsRequest, RuntimeError, Sink};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "dtqw", version, about = "Discrete-time quantum walks on the 2^n-cycle as circuits")]
struct Cli {
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Overrides the seed in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-timestep ideal and measured distributions, fidelity and entropies.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Gate counts, depth and ancillae per (scheme, n, t).
    Metrics {
        /// Position qubits, `a..b` (inclusive) or a single value.
        #[arg(long, value_parser = parse_range)]
        n: (u64, u64),
        /// Time steps, `a..b` (inclusive) or a single value.
        #[arg(long, value_parser = parse_range)]
        t: (u64, u64),
        /// Comma-separated scheme names or `all`.
        #[arg(long, default_value = "all", value_parser = parse_schemes)]
        schemes: SchemeList,
    },
    /// Fidelity against the ideal walk for each configured scheme.
    CompareSchemes {
        #[arg(long)]
        config: PathBuf,
    },
    /// Rényi-2 entropies of coin, position and the whole per timestep.
    Entropy {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Debug)]
struct SchemeList(Vec<Scheme>);

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let num = |x: &str| x.trim().parse::<u64>().map_err(|_| format!("`{x}` is not a non-negative integer"));
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.strip_prefix('=').unwrap_or(b))?)),
        None => {
            let v = num(s)?;
            Ok((v, v))
        }
    }
}

fn parse_schemes(s: &str) -> Result<SchemeList, String> {
    if s == "all" {
        return Ok(SchemeList(Scheme::ALL.to_vec()));
    }
    s.split(',').map(|x| x.trim().parse::<Scheme>().map_err(|e| e.to_string())).collect::<Result<_, _>>().map(SchemeList)
}

enum Failure {
    Usage(String),
    Config(String),
    Runtime(String),
}

impl From<config::ConfigError> for Failure {
    fn from(e: config::ConfigError) -> Self {
        Failure::Config(e.0)
    }
}

impl From<RuntimeError> for Failure {
    fn from(e: RuntimeError) -> Self {
        Failure::Runtime(e.0)
    }
}

fn execute(cli: Cli) -> Result<Vec<PathBuf>, Failure> {
    let sink = Sink { dir: cli.out.clone(), format: cli.format };
    let load = |path: &PathBuf| -> Result<config::Experiment, Failure> {
        let mut exp = commands::read_config(path)?;
        if let Some(seed) = cli.seed {
            exp.raw.seed = seed;
        }
        Ok(exp)
    };
    Ok(match &cli.command {
        Command::Run { config } => commands::cmd_run(&load(config)?, &sink)?,
        Command::CompareSchemes { config } => commands::cmd_compare(&load(config)?, &sink)?,
        Command::Entropy { config } => commands::cmd_entropy(&load(config)?, &sink)?,
        Command::Metrics { n, t, schemes } => {
            for &s in &schemes.0 {
                if n.0 <= n.1 && n.0 < s.min_n() as u64 {
                    return Err(Failure::Usage(format!(
                        "--n: scheme {} needs n ≥ {} (range starts at {})",
                        s.name(),
                        s.min_n(),
                        n.0
                    )));
                }
            }
            if n.1 > 20 {
                return Err(Failure::Usage(format!("--n: n = {} is too large to build", n.1)));
            }
            commands::cmd_metrics(&MetricsRequest { schemes: schemes.0.clone(), n: *n, t: *t }, &sink)?
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Config(m)) => {
            eprintln!("config error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(4)
        }
    }
}
