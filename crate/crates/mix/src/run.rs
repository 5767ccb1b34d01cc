use ntr_core::oracle::exact_posterior;
use ntr_core::partition::DEFAULT_ENUMERATION_CAP;
use ntr_core::sis::ESS_WARNING_FRACTION;
use ntr_core::{LevyIntensity, MomentTable, NormalNormal, UnitKernel};
use serde::Serialize;

use crate::config::{Grid, GridArg, Mode, Model, RunConfig};
use crate::driver;
use crate::error::{MixError, Result};
use crate::ingest::{ingest, Dataset};

pub const SCHEMA: &str = "ntr-mix/1";

/// The output document.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub config: ConfigEcho,
    pub data: DataSummary,
    pub grid: Vec<GridPoint>,
    pub block_count: BlockCount,
    /// Effective sample size of the importance weights; absent in exact mode.
    pub ess: Option<f64>,
    pub warnings: Vec<String>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

/// Everything that determines the output. Output path, format and thread
/// cap are left out because they do not change the numbers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub data: String,
    pub model: Model,
    pub theta: f64,
    pub alpha: Option<f64>,
    pub kernel_var: f64,
    pub prior_var: f64,
    pub replicates: usize,
    pub grid: Grid,
    pub grid_auto: bool,
    pub seed: u64,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DataSummary {
    pub n: usize,
    pub content_hash: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub y: f64,
    pub density: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockCount {
    pub mean: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_std_error: Option<f64>,
    pub distribution: Vec<BlockCountEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockCountEntry {
    pub k: usize,
    pub probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
}

pub fn run(config: &RunConfig) -> Result<Report> {
    let dataset = ingest(&config.data)?;
    run_on(config, &dataset)
}

/// Runs `config` on already loaded data.
pub fn run_on(config: &RunConfig, dataset: &Dataset) -> Result<Report> {
    let data = &dataset.values;
    let n = data.len();
    let intensity = match (config.model, config.alpha) {
        (Model::Beta, _) => LevyIntensity::homogeneous_beta(config.theta),
        (Model::Pd, alpha) => LevyIntensity::poisson_dirichlet(alpha.unwrap_or(0.0), config.theta),
    }
    .map_err(|e| MixError::Config(e.to_string()))?;
    let kernel = NormalNormal::new(config.kernel_var, config.prior_var)
        .map_err(|e| MixError::Config(e.to_string()))?;
    let grid = match config.grid {
        GridArg::Fixed(g) => g,
        GridArg::Auto => Grid::auto(data, (config.kernel_var + config.prior_var).sqrt())?,
    };
    let points = grid.points();
    if config.mode == Mode::Exact && n > DEFAULT_ENUMERATION_CAP {
        return Err(MixError::Config(format!(
            "exact mode enumerates ordered partitions and accepts at most \
             {DEFAULT_ENUMERATION_CAP} observations, got {n}"
        )));
    }
    let rho = MomentTable::new(intensity, n + 1)?;

    let mut warnings = Vec::new();
    let (grid_out, block_count, ess) = match config.mode {
        Mode::Exact => {
            let table = exact_posterior(data, &rho, &kernel)?;
            let density = driver::exact_density(&table, data, &rho, &kernel, &points)?;
            let dist = table.block_count_distribution();
            let block_count = BlockCount {
                mean: table.expectation(|m| m.num_blocks() as f64),
                mean_std_error: None,
                distribution: (1..=n)
                    .map(|k| BlockCountEntry {
                        k,
                        probability: dist[k],
                        std_error: None,
                    })
                    .collect(),
            };
            let grid_out = points
                .iter()
                .zip(density)
                .map(|(&y, density)| GridPoint {
                    y,
                    density,
                    std_error: None,
                })
                .collect();
            (grid_out, block_count, None)
        }
        Mode::Sis | Mode::PriorSample => {
            let draws = if config.mode == Mode::Sis {
                driver::draw_replicates(data, &rho, &kernel, config.replicates, config.seed)?
            } else {
                driver::draw_replicates(data, &rho, &UnitKernel, config.replicates, config.seed)?
            };
            let (per_k, mean) = driver::sis_block_counts(&draws, n);
            let grid_out = if config.mode == Mode::Sis {
                driver::sis_density(&draws, data, &rho, &kernel, &points)?
                    .into_iter()
                    .zip(&points)
                    .map(|(e, &y)| GridPoint {
                        y,
                        density: e.value,
                        std_error: Some(e.std_error),
                    })
                    .collect()
            } else {
                Vec::new()
            };
            let block_count = BlockCount {
                mean: mean.value,
                mean_std_error: Some(mean.std_error),
                distribution: per_k
                    .iter()
                    .zip(1..)
                    .map(|(e, k)| BlockCountEntry {
                        k,
                        probability: e.value,
                        std_error: Some(e.std_error),
                    })
                    .collect(),
            };
            if mean.ess < ESS_WARNING_FRACTION * config.replicates as f64 {
                warnings.push(format!(
                    "effective sample size {:.1} is below {}% of {} replicates",
                    mean.ess,
                    ESS_WARNING_FRACTION * 100.0,
                    config.replicates
                ));
            }
            (grid_out, block_count, Some(mean.ess))
        }
    };

    for p in &grid_out {
        if !(p.density.is_finite() && p.density >= 0.0) {
            return Err(MixError::BadDensity {
                y: p.y,
                value: p.density,
            });
        }
    }

    Ok(Report {
        schema: SCHEMA,
        config: ConfigEcho {
            data: config.data.display().to_string(),
            model: config.model,
            theta: config.theta,
            alpha: config.alpha,
            kernel_var: config.kernel_var,
            prior_var: config.prior_var,
            replicates: config.replicates,
            grid,
            grid_auto: config.grid == GridArg::Auto,
            seed: config.seed,
            mode: config.mode,
        },
        data: DataSummary {
            n,
            content_hash: dataset.content_hash.clone(),
        },
        grid: grid_out,
        block_count,
        ess,
        warnings,
        seed: config.seed,
        wall_time_seconds: None,
    })
}
