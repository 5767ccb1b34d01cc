use std::io::Write;
use std::path::Path;

use crate::config::Format;
use crate::error::{MixError, Result};
use crate::run::Report;

/// Serialises `report`. CSV carries the grid only, with a `std_error`
/// column when the run produced one.
pub fn render(report: &Report, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report)
                .map_err(|e| MixError::Output(std::io::Error::other(e)))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let with_se = report.grid.iter().any(|p| p.std_error.is_some());
            let mut w = csv::Writer::from_writer(Vec::new());
            let header: &[&str] = if with_se {
                &["y", "density", "std_error"]
            } else {
                &["y", "density"]
            };
            w.write_record(header).map_err(csv_error)?;
            for p in &report.grid {
                let mut row = vec![p.y.to_string(), p.density.to_string()];
                if let Some(se) = p.std_error {
                    row.push(se.to_string());
                }
                w.write_record(&row).map_err(csv_error)?;
            }
            w.into_inner().map_err(|e| MixError::Output(e.into_error()))
        }
    }
}

fn csv_error(e: csv::Error) -> MixError {
    MixError::Output(e.into())
}

/// Writes to `path`, or to standard output when `None`.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).and_then(|()| out.flush())
        }
    }
    .map_err(MixError::Output)
}
