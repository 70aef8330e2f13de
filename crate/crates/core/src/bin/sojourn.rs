use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sojourn::harness::commands::{cmd_converge, cmd_greens, cmd_lattice, cmd_mc, cmd_pde};
use sojourn::harness::config::RunConfig;
use sojourn::harness::report::ComparisonReport;
use sojourn::harness::verify::cmd_verify;
use sojourn::{Error, Result};

/// Random walks with a heterogeneous sojourn time: lattice chains, Green's
/// functions, Monte Carlo and finite-difference runs.
#[derive(Parser)]
#[command(name = "sojourn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice density and diagnostics (density.csv, diagnostics.csv).
    Lattice(RunArgs),
    /// Two-region Green's function samples (kernel.csv).
    Greens(RunArgs),
    /// Monte Carlo histograms (histogram*.csv).
    Mc(RunArgs),
    /// Finite-difference solution (density.csv).
    Pde(RunArgs),
    /// Lattice error against a reference for a list of ε (convergence.csv).
    Converge(RunArgs),
    /// Run the acceptance criteria; exits nonzero on failure.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Optional configuration with a `verify` section.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
}

fn load(path: Option<&Path>, seed: Option<u64>) -> Result<RunConfig> {
    let mut cfg = match path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if seed.is_some() {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(ComparisonReport, bool)> {
    let (config, out, seed) = match &cli.command {
        Command::Lattice(a) | Command::Greens(a) | Command::Mc(a) | Command::Pde(a) | Command::Converge(a) => {
            (Some(a.config.as_path()), &a.out, a.seed)
        }
        Command::Verify(a) => (a.config.as_deref(), &a.out, a.seed),
    };
    let cfg = load(config, seed)?;
    std::fs::create_dir_all(out)?;
    let report = match cli.command {
        Command::Lattice(_) => cmd_lattice(&cfg, out)?,
        Command::Greens(_) => cmd_greens(&cfg, out)?,
        Command::Mc(_) => cmd_mc(&cfg, out)?,
        Command::Pde(_) => cmd_pde(&cfg, out)?,
        Command::Converge(_) => cmd_converge(&cfg, out)?,
        Command::Verify(_) => return Ok((cmd_verify(&cfg, out)?, true)),
    };
    Ok((report, false))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, gating)) => {
            if !gating {
                for c in &report.comparisons {
                    println!("{}", c.line());
                }
            }
            if gating && !report.ok() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e @ Error::Config(_)) => {
            eprintln!("usage error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
