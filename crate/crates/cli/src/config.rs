use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use thermoprobe_core::dynamics::optimal_short_time_ratio;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Every tunable parameter, as read from a JSON config file or from flags.
/// Unset fields fall through to the next source.
#[derive(Debug, Clone, Default, PartialEq, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    /// Probe dimensions, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub n: Option<Vec<usize>>,
    /// Ground-level degeneracies, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub n0: Option<Vec<usize>>,
    /// Probe gap Ω.
    #[arg(long)]
    pub gap: Option<f64>,
    /// Sample temperature.
    #[arg(long)]
    pub temperature: Option<f64>,
    /// Coupling strength γ.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Smallest x = Ω/T of the grid.
    #[arg(long)]
    pub x_min: Option<f64>,
    /// Largest x = Ω/T of the grid.
    #[arg(long)]
    pub x_max: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    pub points: Option<usize>,
    /// Shortest contact time, in units of τ.
    #[arg(long)]
    pub dt_min: Option<f64>,
    /// Longest contact time, in units of τ.
    #[arg(long)]
    pub dt_max: Option<f64>,
    /// Temperatures of the thermal preparations, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub thermal: Option<Vec<f64>>,
    /// Add the |+⟩ qubit preparation.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub include_plus: Option<bool>,
    /// Add the ground-state harmonic oscillator.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub include_harmonic: Option<bool>,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl Overrides {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::config("config", format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::config("config", format!("{}: {e}", path.display())))
    }

    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: Overrides) -> Overrides {
        Overrides {
            n: self.n.or(lower.n),
            n0: self.n0.or(lower.n0),
            gap: self.gap.or(lower.gap),
            temperature: self.temperature.or(lower.temperature),
            gamma: self.gamma.or(lower.gamma),
            x_min: self.x_min.or(lower.x_min),
            x_max: self.x_max.or(lower.x_max),
            points: self.points.or(lower.points),
            dt_min: self.dt_min.or(lower.dt_min),
            dt_max: self.dt_max.or(lower.dt_max),
            thermal: self.thermal.or(lower.thermal),
            include_plus: self.include_plus.or(lower.include_plus),
            include_harmonic: self.include_harmonic.or(lower.include_harmonic),
            out: self.out.or(lower.out),
            format: self.format.or(lower.format),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    EquilibriumScan,
    OptimalGap,
    HessianCheck,
    TransientScan,
    Limits,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumScanConfig {
    pub n: Vec<usize>,
    pub gap: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimalGapConfig {
    pub n: Vec<usize>,
    pub n0: Vec<usize>,
    pub temperature: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HessianConfig {
    pub n: Vec<usize>,
    pub temperature: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransientConfig {
    pub n: Vec<usize>,
    pub gap: f64,
    pub temperature: f64,
    pub gamma: f64,
    pub thermal: Vec<f64>,
    pub dt_min: f64,
    pub dt_max: f64,
    pub points: usize,
    pub include_plus: bool,
    pub include_harmonic: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitsConfig {
    pub n: Vec<usize>,
    pub gamma: f64,
    pub temperature: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommandConfig {
    EquilibriumScan(EquilibriumScanConfig),
    OptimalGap(OptimalGapConfig),
    HessianCheck(HessianConfig),
    TransientScan(TransientConfig),
    Limits(LimitsConfig),
}

/// Fully resolved and validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandConfig,
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn positive(field: &'static str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::config(field, format!("must be finite and > 0, got {v}")))
    }
}

fn dimensions(field: &'static str, n: Vec<usize>) -> Result<Vec<usize>, CliError> {
    if n.is_empty() {
        return Err(CliError::config(field, "list is empty"));
    }
    if let Some(bad) = n.iter().find(|&&k| k < 2) {
        return Err(CliError::config(field, format!("dimensions must be at least 2, got {bad}")));
    }
    Ok(n)
}

fn grid(points: usize, lo: (&'static str, f64), hi: (&'static str, f64)) -> Result<(), CliError> {
    positive(lo.0, lo.1)?;
    positive(hi.0, hi.1)?;
    if lo.1 >= hi.1 {
        return Err(CliError::config(lo.0, format!("must be below {} ({} >= {})", hi.0, lo.1, hi.1)));
    }
    if points < 2 {
        return Err(CliError::config("points", format!("need at least 2, got {points}")));
    }
    Ok(())
}

impl RunConfig {
    /// Applies built-in defaults under `o` and checks every precondition.
    pub fn resolve(kind: CommandKind, o: Overrides) -> Result<RunConfig, CliError> {
        let command = match kind {
            CommandKind::EquilibriumScan => {
                let c = EquilibriumScanConfig {
                    n: dimensions("n", o.n.unwrap_or_else(|| vec![2, 4, 6, 8, 10]))?,
                    gap: positive("gap", o.gap.unwrap_or(1.0))?,
                    x_min: o.x_min.unwrap_or(0.05),
                    x_max: o.x_max.unwrap_or(50.0),
                    points: o.points.unwrap_or(400),
                };
                grid(c.points, ("x_min", c.x_min), ("x_max", c.x_max))?;
                CommandConfig::EquilibriumScan(c)
            }
            CommandKind::OptimalGap => {
                let c = OptimalGapConfig {
                    n: dimensions("n", o.n.unwrap_or_else(|| (2..=10).collect()))?,
                    n0: o.n0.unwrap_or_else(|| vec![1]),
                    temperature: positive("temperature", o.temperature.unwrap_or(1.0))?,
                };
                if c.n0.is_empty() {
                    return Err(CliError::config("n0", "list is empty"));
                }
                for &n in &c.n {
                    if let Some(bad) = c.n0.iter().find(|&&k| k == 0 || k >= n) {
                        return Err(CliError::config("n0", format!("{bad} outside [1, {}] for N = {n}", n - 1)));
                    }
                }
                CommandConfig::OptimalGap(c)
            }
            CommandKind::HessianCheck => CommandConfig::HessianCheck(HessianConfig {
                n: dimensions("n", o.n.unwrap_or_else(|| (2..=20).collect()))?,
                temperature: positive("temperature", o.temperature.unwrap_or(1.0))?,
            }),
            CommandKind::TransientScan => {
                let temperature = positive("temperature", o.temperature.unwrap_or(1.0))?;
                let gap = match o.gap {
                    Some(g) => positive("gap", g)?,
                    None => {
                        let x = optimal_short_time_ratio().map_err(CliError::from)?.root;
                        x * temperature
                    }
                };
                let c = TransientConfig {
                    n: dimensions("n", o.n.unwrap_or_else(|| vec![2, 4, 10]))?,
                    gap,
                    temperature,
                    gamma: positive("gamma", o.gamma.unwrap_or(1e-3))?,
                    thermal: o.thermal.unwrap_or_else(|| vec![0.8, 0.9]),
                    dt_min: o.dt_min.unwrap_or(1e-3),
                    dt_max: o.dt_max.unwrap_or(20.0),
                    points: o.points.unwrap_or(200),
                    include_plus: o.include_plus.unwrap_or(false),
                    include_harmonic: o.include_harmonic.unwrap_or(false),
                };
                for &t in &c.thermal {
                    positive("thermal", t)?;
                }
                grid(c.points, ("dt_min", c.dt_min), ("dt_max", c.dt_max))?;
                CommandConfig::TransientScan(c)
            }
            CommandKind::Limits => CommandConfig::Limits(LimitsConfig {
                n: dimensions("n", o.n.unwrap_or_else(|| vec![2, 4, 10]))?,
                gamma: positive("gamma", o.gamma.unwrap_or(1e-3))?,
                temperature: positive("temperature", o.temperature.unwrap_or(1.0))?,
            }),
        };
        Ok(RunConfig { command, out: o.out, format: o.format.unwrap_or_default() })
    }
}
