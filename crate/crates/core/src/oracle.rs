//! Exact posterior over ordered partitions by full enumeration.
//!
//! For `n` up to the enumeration cap every ordered partition gets its
//! unnormalised log mass `ln π(m) + Σ_j ln ∫ Π_{i∈D_j} K(y_i|x) H(dx)`. This is
//! the reference every Monte Carlo estimate is checked against.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::kernel::ConjugateKernel;
use crate::levy::IntensityMoments;
use crate::partition::{enumerate_ordered, forget_order, OrderedPartition, Partition};
use crate::sis::{ln_joint, predictive_density};
use crate::special::LogSumExp;
use crate::Result;

#[derive(Debug, Clone)]
pub struct PosteriorTable {
    pub entries: Vec<(OrderedPartition, f64)>,
    pub ln_normalizer: f64,
}

impl PosteriorTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn probability(&self, index: usize) -> f64 {
        libm::exp(self.entries[index].1 - self.ln_normalizer)
    }

    pub fn probabilities(&self) -> impl Iterator<Item = (&OrderedPartition, f64)> + '_ {
        self.entries
            .iter()
            .map(move |(m, ln)| (m, libm::exp(ln - self.ln_normalizer)))
    }

    /// Posterior law of the number of blocks; index `k` holds `P(n(p) = k)`.
    pub fn block_count_distribution(&self) -> Vec<f64> {
        let n = self.entries.first().map_or(0, |(m, _)| m.n());
        let mut out = vec![0.0; n + 1];
        for (m, p) in self.probabilities() {
            out[m.num_blocks()] += p;
        }
        out
    }

    pub fn expectation<F: Fn(&OrderedPartition) -> f64>(&self, h: F) -> f64 {
        self.probabilities().map(|(m, p)| p * h(m)).sum()
    }
}

pub fn exact_posterior<M, K>(data: &[f64], rho: &M, kernel: &K) -> Result<PosteriorTable>
where
    M: IntensityMoments,
    K: ConjugateKernel,
{
    let mut entries = Vec::new();
    let mut norm = LogSumExp::default();
    for m in enumerate_ordered(data.len())? {
        let ln = ln_joint(&m, data, rho, kernel)?;
        norm.push(ln);
        entries.push((m, ln));
    }
    Ok(PosteriorTable {
        entries,
        ln_normalizer: norm.value(),
    })
}

/// Posterior over unordered partitions, aggregated from the ordered table.
/// Values are normalised probabilities.
pub fn exact_partition_posterior<M, K>(
    data: &[f64],
    rho: &M,
    kernel: &K,
) -> Result<BTreeMap<Partition, f64>>
where
    M: IntensityMoments,
    K: ConjugateKernel,
{
    let table = exact_posterior(data, rho, kernel)?;
    let mut acc: BTreeMap<Partition, LogSumExp> = BTreeMap::new();
    for (m, ln) in &table.entries {
        acc.entry(forget_order(m)).or_default().push(*ln);
    }
    Ok(acc
        .into_iter()
        .map(|(p, l)| (p, libm::exp(l.value() - table.ln_normalizer)))
        .collect())
}

/// `Σ_m f(y | m, Y) π(m | Y)` on `grid`.
pub fn exact_predictive_density<M, K>(
    data: &[f64],
    rho: &M,
    kernel: &K,
    grid: &[f64],
) -> Result<Vec<f64>>
where
    M: IntensityMoments,
    K: ConjugateKernel,
{
    let table = exact_posterior(data, rho, kernel)?;
    predictive_from_table(&table, data, rho, kernel, grid)
}

pub fn predictive_from_table<M, K>(
    table: &PosteriorTable,
    data: &[f64],
    rho: &M,
    kernel: &K,
    grid: &[f64],
) -> Result<Vec<f64>>
where
    M: IntensityMoments,
    K: ConjugateKernel,
{
    let mut out = vec![0.0; grid.len()];
    for (m, p) in table.probabilities() {
        let f = predictive_density(m, data, rho, kernel, grid)?;
        out.iter_mut().zip(f).for_each(|(o, v)| *o += p * v);
    }
    Ok(out)
}
