//! Single-column numeric input.

use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{MixError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub values: Vec<f64>,
    /// `sha256:` digest of the file bytes, framed as a git blob.
    pub content_hash: String,
}

pub fn ingest(path: &Path) -> Result<Dataset> {
    let bytes = std::fs::read(path)
        .map_err(|e| MixError::Data(format!("cannot read {}: {e}", path.display())))?;
    Ok(Dataset {
        values: parse_values(&bytes)?,
        content_hash: content_hash(&bytes),
    })
}

/// Digest of `"blob <len>\0" ++ bytes`, as `git hash-object` computes it in a
/// SHA-256 repository.
pub fn content_hash(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", bytes.len()));
    h.update(bytes);
    format!("sha256:{}", hex::encode(h.finalize()))
}

/// One value per line. A first line that does not parse is taken as a
/// header. Blank lines are skipped.
pub fn parse_values(bytes: &[u8]) -> Result<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let mut values = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| MixError::Data(e.to_string()))?;
        let line = record.position().map_or(index as u64 + 1, |p| p.line());
        if record.len() != 1 {
            return Err(MixError::Data(format!(
                "line {line}: expected one column, found {}",
                record.len()
            )));
        }
        let field = &record[0];
        if field.is_empty() {
            continue;
        }
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(v) => {
                return Err(MixError::Data(format!(
                    "line {line}: value {v} is not finite"
                )))
            }
            Err(_) if index == 0 => {}
            Err(_) => {
                return Err(MixError::Data(format!(
                    "line {line}: '{field}' is not a number"
                )))
            }
        }
    }
    if values.is_empty() {
        return Err(MixError::Data("no observations".into()));
    }
    Ok(values)
}
