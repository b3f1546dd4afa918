//! Data series for temperature-estimation bounds: equilibrium scans, optimal
//! gaps, Hessian checks, transient scans and short-time limits.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{CommandConfig, CommandKind, Format, Overrides, RunConfig};
pub use error::CliError;
use output::Table;

#[derive(Debug, Parser)]
#[command(name = "thermoprobe", version, about = "Quantum thermometry bounds as CSV or JSON data series")]
pub struct Cli {
    /// JSON file with parameter values; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// QFI versus temperature for optimal N-level probes and the oscillator.
    EquilibriumScan(#[command(flatten)] Overrides),
    /// Optimal gap x* = Ω*/T for each (N, N0).
    OptimalGap(#[command(flatten)] Overrides),
    /// Eigenvalues of the variance Hessian at the optimal spectrum.
    HessianCheck(#[command(flatten)] Overrides),
    /// F(Δt)/Δt for several preparations over a log grid of contact times.
    TransientScan(#[command(flatten)] Overrides),
    /// Short-contact-time limit of F/Δt at the optimal ratio x̃.
    Limits(#[command(flatten)] Overrides),
}

impl Command {
    fn split(self) -> (CommandKind, Overrides) {
        match self {
            Command::EquilibriumScan(o) => (CommandKind::EquilibriumScan, o),
            Command::OptimalGap(o) => (CommandKind::OptimalGap, o),
            Command::HessianCheck(o) => (CommandKind::HessianCheck, o),
            Command::TransientScan(o) => (CommandKind::TransientScan, o),
            Command::Limits(o) => (CommandKind::Limits, o),
        }
    }
}

/// Flags over the config file over the built-in defaults.
pub fn resolve(cli: Cli) -> Result<RunConfig, CliError> {
    let file = match &cli.config {
        Some(path) => Overrides::from_file(path)?,
        None => Overrides::default(),
    };
    let (kind, flags) = cli.command.split();
    RunConfig::resolve(kind, flags.over(file))
}

pub fn execute(config: &CommandConfig) -> Result<Table, CliError> {
    match config {
        CommandConfig::EquilibriumScan(c) => commands::cmd_equilibrium_scan(c),
        CommandConfig::OptimalGap(c) => commands::cmd_optimal_gap(c),
        CommandConfig::HessianCheck(c) => commands::cmd_hessian_check(c),
        CommandConfig::TransientScan(c) => commands::cmd_transient_scan(c),
        CommandConfig::Limits(c) => commands::cmd_limits(c),
    }
}

/// Sizes the rayon pool from `THERMOPROBE_THREADS` when set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("THERMOPROBE_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::config("THERMOPROBE_THREADS", format!("expected a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::config("THERMOPROBE_THREADS", e.to_string()))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let config = resolve(cli)?;
    let table = execute(&config.command)?;
    match &config.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(config.format, &mut w)?;
            w.flush()?;
        }
        None => table.write(config.format, io::stdout().lock())?,
    }
    Ok(())
}
