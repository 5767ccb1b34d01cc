//! Exact laws on ordered and unordered partitions and one-step prediction
//! weights.
//!
//! For an ordered partition with block sizes `d_1..d_k` and at-risk counts
//! `r_0 = 0 < r_1 < .. < r_k = n`,
//!
//! ```text
//! π(m) = Π_j κ_{d_j, r_{j-1}} / Π_j φ(r_j)
//! ```
//!
//! and the unordered law sums this over the `k!` rankings of the blocks.
//!
//! Seating customer `n+1` either grows the rank-`j` block (weight `p_j`) or
//! opens a new singleton inserted at rank `j ∈ 1..=k+1`, shifting ranks `j..`
//! down (weight `q_j`). Both weights are exactly `π(extension) / π(m)`; the
//! at-risk counts of every block at or below the affected rank grow by one,
//! which is where the ratios of shifted `κ`s and of `φ(r_l) / φ(r_l + 1)` come
//! from.

use alloc::vec;
use alloc::vec::Vec;

use crate::levy::IntensityMoments;
use crate::partition::{orderings_of, OrderedPartition, Partition};
use crate::special::LogSumExp;
use crate::{Error, Result};

/// Largest number of blocks accepted by [`ln_prob_partition`].
pub const PERMUTATION_CAP: usize = 9;
/// `|Σ weights - 1|` above which prediction weights are rejected.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-8;

/// `ln π(m)`.
pub fn ln_prob_ordered<M: IntensityMoments>(m: &OrderedPartition, rho: &M) -> Result<f64> {
    ln_prob_sizes(&m.sizes(), rho)
}

/// `ln π(m)` from the rank-ordered block sizes alone.
pub fn ln_prob_sizes<M: IntensityMoments>(sizes: &[usize], rho: &M) -> Result<f64> {
    let mut r = 0;
    let mut total = 0.0;
    for &d in sizes {
        total += rho.ln_kappa(d, r)?;
        r += d;
        total -= rho.ln_phi(r)?;
    }
    Ok(total)
}

/// `ln π(p)`: log-sum over every ranking of the blocks of `p`.
pub fn ln_prob_partition<M: IntensityMoments>(p: &Partition, rho: &M) -> Result<f64> {
    if p.num_blocks() > PERMUTATION_CAP {
        return Err(Error::CapExceeded {
            requested: p.num_blocks(),
            cap: PERMUTATION_CAP,
        });
    }
    let mut acc = LogSumExp::default();
    for m in orderings_of(p) {
        acc.push(ln_prob_ordered(&m, rho)?);
    }
    Ok(acc.value())
}

/// Log prediction weights for the next customer.
///
/// `ln_join[j]` is for joining the existing rank-`j` block (`j < k`);
/// `ln_new[j]` is for a new block placed at rank `j` (`j ≤ k`).
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionWeights {
    pub ln_join: Vec<f64>,
    pub ln_new: Vec<f64>,
}

impl PredictionWeights {
    pub fn join(&self, j: usize) -> f64 {
        libm::exp(self.ln_join[j])
    }

    pub fn new_block(&self, j: usize) -> f64 {
        libm::exp(self.ln_new[j])
    }

    pub fn total_join(&self) -> f64 {
        self.ln_join.iter().map(|&w| libm::exp(w)).sum()
    }

    pub fn total_new(&self) -> f64 {
        self.ln_new.iter().map(|&w| libm::exp(w)).sum()
    }
}

pub fn prediction_weights<M: IntensityMoments>(
    m: &OrderedPartition,
    rho: &M,
) -> Result<PredictionWeights> {
    prediction_weights_from_sizes(&m.sizes(), rho)
}

/// Prediction weights given the rank-ordered block sizes of the current state.
pub fn prediction_weights_from_sizes<M: IntensityMoments>(
    sizes: &[usize],
    rho: &M,
) -> Result<PredictionWeights> {
    let k = sizes.len();
    // before[j] = r_{j-1}, after[j] = r_j
    let mut before = vec![0usize; k];
    let mut after = vec![0usize; k];
    let mut r = 0;
    for (j, &d) in sizes.iter().enumerate() {
        before[j] = r;
        r += d;
        after[j] = r;
    }
    let n = r;

    let mut ln_kappa_here = vec![0.0; k];
    let mut ln_shift = vec![0.0; k]; // ln κ_{d_l, r_{l-1}+1} - ln κ_{d_l, r_{l-1}}
    let mut ln_phi_ratio = vec![0.0; k]; // ln φ(r_l) - ln φ(r_l + 1)
    for j in 0..k {
        ln_kappa_here[j] = rho.ln_kappa(sizes[j], before[j])?;
        ln_shift[j] = rho.ln_kappa(sizes[j], before[j] + 1)? - ln_kappa_here[j];
        ln_phi_ratio[j] = rho.ln_phi(after[j])? - rho.ln_phi(after[j] + 1)?;
    }
    // suffix[j] = Σ_{l ≥ j} (ln_shift + ln_phi_ratio); suffix[k] = 0
    let mut suffix = vec![0.0; k + 1];
    for j in (0..k).rev() {
        suffix[j] = suffix[j + 1] + ln_shift[j] + ln_phi_ratio[j];
    }

    let mut ln_join = Vec::with_capacity(k);
    for j in 0..k {
        let grow = rho.ln_kappa(sizes[j] + 1, before[j])? - ln_kappa_here[j];
        ln_join.push(grow + ln_phi_ratio[j] + suffix[j + 1]);
    }
    let mut ln_new = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let r_prev = if j < k { before[j] } else { n };
        let open = rho.ln_kappa(1, r_prev)? - rho.ln_phi(r_prev + 1)?;
        ln_new.push(open + suffix[j]);
    }

    let weights = PredictionWeights { ln_join, ln_new };
    let total = weights.total_join() + weights.total_new();
    let err = libm::fabs(total - 1.0);
    if err.is_nan() || err > WEIGHT_SUM_TOLERANCE {
        return Err(Error::WeightNormalization { total });
    }
    Ok(weights)
}
