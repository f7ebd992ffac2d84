//! `orlicz <subcommand> --scenario path [--out dir] [--seed n] [--horizon n]`

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod scenario;

use scenario::Scenario;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    /// The report was written; the operator is not bounded.
    #[error("composition operator shows unbounded evidence: {0}")]
    Unbounded(String),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::InvalidScenario(_) => 2,
            CliError::Unbounded(_) => 3,
            CliError::Other(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "orlicz", version, about = "Orlicz norms and expansivity classifiers for composition operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Subcommand)]
enum Command {
    /// Δ2/Δ′ certificates and the complementary function.
    Young(Args),
    /// Gauge, Amemiya and dual-grid norms of the scenario function.
    Norm(Args),
    /// Every enabled expansivity criterion.
    Classify(Args),
    /// Exponent estimates, instability and strong structural stability.
    Stability(Args),
    /// Random unit vectors followed along their orbits.
    Probe(Args),
    /// `classify` over the scenario's parameter grid.
    Sweep(Args),
}

#[derive(Debug, Clone, clap::Args)]
struct Args {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, default_value = "orlicz-out")]
    out: PathBuf,
    /// Overrides the probe seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the horizon of the subcommand.
    #[arg(long)]
    horizon: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Young,
    Norm,
    Classify,
    Stability,
    Probe,
    Sweep,
}

impl Command {
    fn parts(self) -> (Kind, Args) {
        match self {
            Command::Young(a) => (Kind::Young, a),
            Command::Norm(a) => (Kind::Norm, a),
            Command::Classify(a) => (Kind::Classify, a),
            Command::Stability(a) => (Kind::Stability, a),
            Command::Probe(a) => (Kind::Probe, a),
            Command::Sweep(a) => (Kind::Sweep, a),
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    let (kind, args) = command.parts();
    let text = std::fs::read_to_string(&args.scenario)
        .map_err(|e| CliError::InvalidScenario(format!("{}: {e}", args.scenario.display())))?;
    let (mut scenario, echo) = Scenario::parse(&text)?;
    if let Some(seed) = args.seed {
        scenario.probe.seed = seed;
    }
    if let Some(h) = args.horizon {
        if h == 0 {
            return Err(CliError::InvalidScenario("--horizon must be positive".into()));
        }
        if kind == Kind::Probe {
            scenario.probe.horizon = h;
        } else {
            scenario.classifier.horizon = h;
        }
    }
    let ctx = commands::Context { seed: scenario.probe.seed, scenario, echo, out: args.out };
    match kind {
        Kind::Young => commands::young(&ctx),
        Kind::Norm => commands::norm(&ctx),
        Kind::Classify => commands::classify(&ctx),
        Kind::Stability => commands::stability(&ctx),
        Kind::Probe => commands::probe(&ctx),
        Kind::Sweep => commands::sweep(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("orlicz: {e:#}");
            ExitCode::from(e.exit_code())
        }
    }
}
