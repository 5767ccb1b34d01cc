//! Batch front end for [`ntr_core`]: input parsing, run configuration,
//! parallel replicate execution and JSON/CSV output.

pub mod config;
pub mod driver;
mod error;
pub mod ingest;
pub mod output;
pub mod run;

use std::time::Instant;

pub use config::{Cli, RunConfig};
pub use error::{MixError, Result};
pub use run::{run, Report};

/// Validates `cli`, runs it and writes the result.
pub fn execute(cli: Cli) -> Result<()> {
    let config = RunConfig::try_from(cli)?;
    let start = Instant::now();
    let mut report = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| MixError::Config(format!("thread pool: {e}")))?
            .install(|| run(&config))?,
        None => run(&config)?,
    };
    let elapsed = start.elapsed().as_secs_f64();
    if config.timing {
        report.wall_time_seconds = Some(elapsed);
    }
    output::emit(
        &output::render(&report, config.format)?,
        config.output.as_deref(),
    )?;
    eprintln!(
        "ntr-mix: mode={:?} n={} ess={} in {elapsed:.3}s",
        config.mode,
        report.data.n,
        report.ess.map_or("-".to_string(), |e| format!("{e:.1}")),
    );
    for w in &report.warnings {
        eprintln!("ntr-mix: warning: {w}");
    }
    Ok(())
}
