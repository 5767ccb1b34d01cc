//! Command-line flags and the validated run configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::error::{MixError, Result};

/// Points in an automatically chosen grid.
pub const AUTO_GRID_STEPS: usize = 200;
/// Half-width of an automatic grid in sample standard deviations.
pub const AUTO_GRID_SDS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// Homogeneous beta intensity (Dirichlet process).
    Beta,
    /// Two-parameter Poisson-Dirichlet intensity.
    Pd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Sequential importance sampling over ordered partitions.
    Sis,
    /// Exhaustive enumeration; at most 8 observations.
    Exact,
    /// Draws from the prior partition law; the kernel is ignored.
    PriorSample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

/// Evenly spaced evaluation points, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(MixError::Config(format!(
                "grid needs finite min < max, got {min}:{max}"
            )));
        }
        if steps < 2 {
            return Err(MixError::Config(format!(
                "grid needs at least 2 steps, got {steps}"
            )));
        }
        Ok(Grid { min, max, steps })
    }

    /// `data range ± 3 sd` in 200 steps. With fewer than two distinct values
    /// the prior predictive sd `sqrt(kernel_var + prior_var)` stands in.
    pub fn auto(data: &[f64], fallback_sd: f64) -> Result<Self> {
        let lo = data.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = data.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let sd = sample_sd(data)
            .filter(|&sd| sd > 0.0)
            .unwrap_or(fallback_sd);
        Grid::new(
            lo - AUTO_GRID_SDS * sd,
            hi + AUTO_GRID_SDS * sd,
            AUTO_GRID_STEPS,
        )
    }

    pub fn points(&self) -> Vec<f64> {
        let last = self.steps - 1;
        let h = (self.max - self.min) / last as f64;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.max
                } else {
                    self.min + h * i as f64
                }
            })
            .collect()
    }
}

fn sample_sd(data: &[f64]) -> Option<f64> {
    if data.len() < 2 {
        return None;
    }
    let n = data.len() as f64;
    let mean = data.iter().sum::<f64>() / n;
    let ss: f64 = data.iter().map(|y| (y - mean) * (y - mean)).sum();
    Some((ss / (n - 1.0)).sqrt())
}

/// `--grid` value: `auto` or `MIN:MAX:STEPS`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridArg {
    Auto,
    Fixed(Grid),
}

impl FromStr for GridArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(GridArg::Auto);
        }
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, steps] = parts[..] else {
            return Err(format!("expected MIN:MAX:STEPS or auto, got '{s}'"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
        let steps = steps
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("'{steps}': {e}"))?;
        Grid::new(num(min)?, num(max)?, steps)
            .map(GridArg::Fixed)
            .map_err(|e| e.to_string())
    }
}

impl fmt::Display for GridArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridArg::Auto => f.write_str("auto"),
            GridArg::Fixed(g) => write!(f, "{}:{}:{}", g.min, g.max, g.steps),
        }
    }
}

/// Density estimation for neutral-to-the-right species sampling mixtures
/// with a Normal-Normal kernel.
///
/// Reads one observation per line (an optional non-numeric header line is
/// skipped) and writes the predictive density on a grid together with the
/// posterior law of the number of clusters.
///
/// Exit status: 0 success, 2 configuration error, 3 data error,
/// 4 numeric failure, 1 output could not be written.
#[derive(Debug, Clone, Parser)]
#[command(name = "ntr-mix", version, allow_negative_numbers = true)]
pub struct Cli {
    /// Input file, one numeric observation per line.
    #[arg(long, value_name = "PATH")]
    pub data: PathBuf,
    /// Random intensity family.
    #[arg(long, value_enum, default_value_t = Model::Beta)]
    pub model: Model,
    /// Intensity concentration θ > 0.
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    /// Poisson-Dirichlet discount α in [0, 1); only with --model pd (default 0).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Kernel variance (the Normal likelihood variance).
    #[arg(long, default_value_t = 1.0)]
    pub kernel_var: f64,
    /// Prior variance A of the N(0, A) base measure.
    #[arg(long, default_value_t = 1.0)]
    pub prior_var: f64,
    /// Number of SIS replicates or prior draws.
    #[arg(long, default_value_t = 10_000)]
    pub replicates: usize,
    /// Evaluation grid; `auto` spans the data range ± 3 sample sd in 200 steps.
    #[arg(
        long,
        value_name = "MIN:MAX:STEPS",
        default_value = "auto",
        allow_hyphen_values = true
    )]
    pub grid: GridArg,
    /// Seed; replicate b uses stream b of a ChaCha8 generator seeded with it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Sis)]
    pub mode: Mode,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// `csv` writes the grid only.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker thread cap. Results do not depend on it.
    #[arg(long, env = "NTR_MIX_THREADS", value_name = "N")]
    pub threads: Option<usize>,
    /// Include wall time in the JSON output, which makes it nondeterministic.
    #[arg(long)]
    pub timing: bool,
}

/// A checked configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub data: PathBuf,
    pub model: Model,
    pub theta: f64,
    /// Set exactly when `model` is `Pd`.
    pub alpha: Option<f64>,
    pub kernel_var: f64,
    pub prior_var: f64,
    pub replicates: usize,
    pub grid: GridArg,
    pub seed: u64,
    pub mode: Mode,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
    pub timing: bool,
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(MixError::Config(format!(
            "--{name} must be positive and finite, got {v}"
        )))
    }
}

impl TryFrom<Cli> for RunConfig {
    type Error = MixError;

    fn try_from(cli: Cli) -> Result<Self> {
        let alpha = match (cli.model, cli.alpha) {
            (Model::Beta, Some(_)) => {
                return Err(MixError::Config(
                    "--alpha is only valid with --model pd".into(),
                ))
            }
            (Model::Beta, None) => None,
            (Model::Pd, a) => {
                let a = a.unwrap_or(0.0);
                if !(0.0..1.0).contains(&a) {
                    return Err(MixError::Config(format!(
                        "--alpha must lie in [0, 1), got {a}"
                    )));
                }
                Some(a)
            }
        };
        if cli.replicates == 0 {
            return Err(MixError::Config("--replicates must be at least 1".into()));
        }
        if cli.threads == Some(0) {
            return Err(MixError::Config("thread cap must be at least 1".into()));
        }
        Ok(RunConfig {
            theta: positive("theta", cli.theta)?,
            kernel_var: positive("kernel-var", cli.kernel_var)?,
            prior_var: positive("prior-var", cli.prior_var)?,
            data: cli.data,
            model: cli.model,
            alpha,
            replicates: cli.replicates,
            grid: cli.grid,
            seed: cli.seed,
            mode: cli.mode,
            output: cli.output,
            format: cli.format,
            threads: cli.threads,
            timing: cli.timing,
        })
    }
}
