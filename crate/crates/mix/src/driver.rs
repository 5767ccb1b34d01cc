//! Parallel replicate execution with order-fixed reductions, so results do
//! not depend on the thread count.

use ntr_core::oracle::PosteriorTable;
use ntr_core::sis::{importance_weights, predictive_density, run_replicate, weighted_estimate};
use ntr_core::{ConjugateKernel, Estimate, IntensityMoments, SisDraw};
use rayon::prelude::*;

use crate::error::Result;

/// Draws per reduction chunk.
const CHUNK: usize = 256;

pub fn draw_replicates<M, K>(
    data: &[f64],
    rho: &M,
    kernel: &K,
    replicates: usize,
    seed: u64,
) -> Result<Vec<SisDraw>>
where
    M: IntensityMoments + Sync,
    K: ConjugateKernel + Sync,
{
    Ok((0..replicates as u64)
        .into_par_iter()
        .map(|b| run_replicate(data, rho, kernel, seed, b))
        .collect::<Result<Vec<_>, _>>()?)
}

/// Sums per-chunk vectors in chunk order.
fn ordered_sum(parts: Vec<Vec<f64>>, len: usize) -> Vec<f64> {
    parts.into_iter().fold(vec![0.0; len], |mut acc, p| {
        acc.iter_mut().zip(p).for_each(|(a, v)| *a += v);
        acc
    })
}

/// Self-normalised estimates of the predictive density at each grid point.
pub fn sis_density<M, K>(
    draws: &[SisDraw],
    data: &[f64],
    rho: &M,
    kernel: &K,
    grid: &[f64],
) -> Result<Vec<Estimate>>
where
    M: IntensityMoments + Sync,
    K: ConjugateKernel + Sync,
{
    let weights = importance_weights(&draws.iter().map(|d| d.log_weight).collect::<Vec<_>>());
    let total: f64 = weights.iter().sum();
    let ess = ntr_core::sis::effective_sample_size(&weights);
    let g = grid.len();

    // Two passes over the draws: weighted means, then weighted squared
    // deviations, each summed chunk by chunk in a fixed order.
    let pass = |mean: Option<&[f64]>| -> Result<Vec<f64>> {
        let parts = draws
            .par_chunks(CHUNK)
            .zip(weights.par_chunks(CHUNK))
            .map(|(ds, ws)| {
                let mut acc = vec![0.0; g];
                for (d, &w) in ds.iter().zip(ws) {
                    let f = predictive_density(&d.partition, data, rho, kernel, grid)?;
                    for ((a, v), i) in acc.iter_mut().zip(f).zip(0..) {
                        *a += match mean {
                            None => w * v,
                            Some(m) => w * w * (v - m[i]) * (v - m[i]),
                        };
                    }
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>, ntr_core::Error>>()?;
        Ok(ordered_sum(parts, g))
    };
    let means: Vec<f64> = pass(None)?.into_iter().map(|s| s / total).collect();
    let spread = pass(Some(&means))?;
    Ok(means
        .into_iter()
        .zip(spread)
        .map(|(value, s)| Estimate {
            value,
            ess,
            std_error: s.sqrt() / total,
        })
        .collect())
}

/// Estimates of `P(n(p) = k)` for `k = 1..=n` and of the mean block count.
pub fn sis_block_counts(draws: &[SisDraw], n: usize) -> (Vec<Estimate>, Estimate) {
    let weights = importance_weights(&draws.iter().map(|d| d.log_weight).collect::<Vec<_>>());
    let counts: Vec<usize> = draws.iter().map(|d| d.partition.num_blocks()).collect();
    let per_k = (1..=n)
        .map(|k| {
            let ind: Vec<f64> = counts
                .iter()
                .map(|&c| f64::from(u8::from(c == k)))
                .collect();
            weighted_estimate(&weights, &ind)
        })
        .collect();
    let as_f64: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    (per_k, weighted_estimate(&weights, &as_f64))
}

/// Table-weighted predictive density, reduced in table order.
pub fn exact_density<M, K>(
    table: &PosteriorTable,
    data: &[f64],
    rho: &M,
    kernel: &K,
    grid: &[f64],
) -> Result<Vec<f64>>
where
    M: IntensityMoments + Sync,
    K: ConjugateKernel + Sync,
{
    let parts = table
        .entries
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; grid.len()];
            for (m, ln) in chunk {
                let p = (ln - table.ln_normalizer).exp();
                let f = predictive_density(m, data, rho, kernel, grid)?;
                acc.iter_mut().zip(f).for_each(|(a, v)| *a += p * v);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>, ntr_core::Error>>()?;
    Ok(ordered_sum(parts, grid.len()))
}
