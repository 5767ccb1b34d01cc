//! Ranked weighted Chinese restaurant process.
//!
//! Customers `1..n` are seated one at a time. With the first `n` seated, the
//! next customer with observation `y` scores
//!
//! - `p_j · ∫ K(y|x) π(dx | D_j)` for joining the rank-`j` table, and
//! - `q_j · ∫ K(y|x) H(dx)` for a new table placed at rank `j`,
//!
//! and is seated with probability proportional to its score. The normaliser
//! `l(n)` is the one-step predictive density of `y`. A full pass draws an
//! ordered partition `m` from a proposal `q(m)` with
//! `L(m) q(m) = π(m) Π_j ∫ Π_{i∈D_j} K(y_i|x) H(dx)`, where
//! `L(m) = Π_i l(i-1)`, so `L` is the importance weight for the posterior of
//! `m`. With `K ≡ 1` every `l(n) = 1` and the draw is exact from `π(m)`.
//!
//! Replicates are independent: replicate `b` runs on its own ChaCha stream
//! derived from `(seed, b)`, so serial and parallel drivers produce identical
//! draws.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eppf::{ln_prob_ordered, prediction_weights_from_sizes, PredictionWeights};
use crate::kernel::ConjugateKernel;
use crate::levy::IntensityMoments;
use crate::partition::{OrderedPartition, Seat};
use crate::special::log_sum_exp;
use crate::{Error, Result};

/// Runs whose `ess / B` falls below this are flagged.
pub const ESS_WARNING_FRACTION: f64 = 0.01;

#[derive(Debug, Clone)]
pub struct SeatedBlock<S> {
    pub items: Vec<usize>,
    pub stats: S,
}

#[derive(Debug, Clone)]
pub struct SeatingState<S> {
    blocks: Vec<SeatedBlock<S>>,
    customers_seated: usize,
    log_l_product: f64,
    log_proposal: f64,
}

impl<S> Default for SeatingState<S> {
    fn default() -> Self {
        Self {
            blocks: Vec::new(),
            customers_seated: 0,
            log_l_product: 0.0,
            log_proposal: 0.0,
        }
    }
}

/// Log seating scores for one customer: `join[j]` for occupied rank `j`,
/// `new[j]` for a new table at rank `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeatingScores {
    pub join: Vec<f64>,
    pub new: Vec<f64>,
}

impl SeatingScores {
    /// `ln l(n)`, the log of the summed scores.
    pub fn ln_total(&self) -> f64 {
        let all: Vec<f64> = self.join.iter().chain(self.new.iter()).copied().collect();
        log_sum_exp(&all)
    }

    /// Normalised probability of a seating move.
    pub fn probability(&self, seat: Seat) -> f64 {
        let ln = match seat {
            Seat::Join(j) => self.join[j],
            Seat::New(j) => self.new[j],
        };
        libm::exp(ln - self.ln_total())
    }
}

impl<S: Clone + Default> SeatingState<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn customers_seated(&self) -> usize {
        self.customers_seated
    }

    pub fn blocks(&self) -> &[SeatedBlock<S>] {
        &self.blocks
    }

    /// `Σ ln l(i-1)` over the customers seated so far.
    pub fn log_l_product(&self) -> f64 {
        self.log_l_product
    }

    /// `ln` of the probability with which the seating moves so far were chosen.
    pub fn log_proposal(&self) -> f64 {
        self.log_proposal
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.items.len()).collect()
    }

    pub fn partition(&self) -> OrderedPartition {
        OrderedPartition::new(
            self.customers_seated,
            self.blocks.iter().map(|b| b.items.clone()).collect(),
        )
        .expect("seating state always covers the seated customers")
    }

    pub fn scores<M, K>(&self, y: f64, rho: &M, kernel: &K) -> Result<SeatingScores>
    where
        M: IntensityMoments,
        K: ConjugateKernel<Stats = S>,
    {
        let weights = prediction_weights_from_sizes(&self.sizes(), rho)?;
        let join = self
            .blocks
            .iter()
            .zip(&weights.ln_join)
            .map(|(b, &lw)| Ok(lw + kernel.ln_block_predictive(&b.stats, y)?))
            .collect::<Result<Vec<_>>>()?;
        let ln_new_table = kernel.ln_prior_predictive(y);
        let new = weights.ln_new.iter().map(|&lw| lw + ln_new_table).collect();
        Ok(SeatingScores { join, new })
    }

    /// Seats the next customer, returning the move taken.
    pub fn seat_next<M, K, R>(&mut self, y: f64, rho: &M, kernel: &K, rng: &mut R) -> Result<Seat>
    where
        M: IntensityMoments,
        K: ConjugateKernel<Stats = S>,
        R: Rng + ?Sized,
    {
        let scores = self.scores(y, rho, kernel)?;
        let k = scores.join.len();
        let all: Vec<f64> = scores
            .join
            .iter()
            .chain(scores.new.iter())
            .copied()
            .collect();
        let max = all.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !max.is_finite() {
            return Err(Error::ZeroScores {
                customer: self.customers_seated,
            });
        }
        let rel: Vec<f64> = all.iter().map(|&s| libm::exp(s - max)).collect();
        let total: f64 = rel.iter().sum();
        let target = rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut chosen = rel.len() - 1;
        for (i, &w) in rel.iter().enumerate() {
            acc += w;
            if target < acc && w > 0.0 {
                chosen = i;
                break;
            }
        }
        // Guard against landing on a zero-weight tail category through rounding.
        while rel[chosen] == 0.0 {
            chosen -= 1;
        }
        let ln_l = max + libm::log(total);
        self.log_l_product += ln_l;
        self.log_proposal += all[chosen] - ln_l;

        let item = self.customers_seated;
        let seat = if chosen < k {
            let block = &mut self.blocks[chosen];
            block.items.push(item);
            kernel.observe(&mut block.stats, y);
            Seat::Join(chosen)
        } else {
            let rank = chosen - k;
            let mut stats = S::default();
            kernel.observe(&mut stats, y);
            self.blocks.insert(
                rank,
                SeatedBlock {
                    items: vec![item],
                    stats,
                },
            );
            Seat::New(rank)
        };
        self.customers_seated += 1;
        Ok(seat)
    }
}

/// One SIS replicate: the ordered partition, `ln L(m)` and `ln q(m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SisDraw {
    pub partition: OrderedPartition,
    pub log_weight: f64,
    pub log_proposal: f64,
}

/// RNG for replicate `index` under `seed`.
pub fn replicate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Seats every observation in data order using `rng`.
pub fn draw_with<M, K, R>(data: &[f64], rho: &M, kernel: &K, rng: &mut R) -> Result<SisDraw>
where
    M: IntensityMoments,
    K: ConjugateKernel,
    R: Rng + ?Sized,
{
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut state = SeatingState::<K::Stats>::new();
    for &y in data {
        state.seat_next(y, rho, kernel, rng)?;
    }
    let draw = SisDraw {
        partition: state.partition(),
        log_weight: state.log_l_product(),
        log_proposal: state.log_proposal(),
    };
    #[cfg(feature = "verify")]
    if data.len() <= 5 {
        let residual = weight_identity_residual(&draw, data, rho, kernel)?;
        assert!(residual < 1e-10, "weight identity off by {residual:e}");
    }
    Ok(draw)
}

pub fn run_replicate<M, K>(
    data: &[f64],
    rho: &M,
    kernel: &K,
    seed: u64,
    index: u64,
) -> Result<SisDraw>
where
    M: IntensityMoments,
    K: ConjugateKernel,
{
    draw_with(data, rho, kernel, &mut replicate_rng(seed, index))
}

/// `replicates` independent draws, replicate `b` on stream `(seed, b)`.
pub fn run_sis<M, K>(
    data: &[f64],
    rho: &M,
    kernel: &K,
    replicates: usize,
    seed: u64,
) -> Result<Vec<SisDraw>>
where
    M: IntensityMoments,
    K: ConjugateKernel,
{
    if replicates == 0 {
        return Err(Error::InvalidParameter(
            "replicate count must be at least 1",
        ));
    }
    (0..replicates as u64)
        .map(|b| run_replicate(data, rho, kernel, seed, b))
        .collect()
}

/// Self-normalised importance sampling estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// `(Σ w)² / Σ w²`.
    pub ess: f64,
    /// Delta-method standard error of the ratio estimator.
    pub std_error: f64,
}

/// Weights `exp(ln w_b - max ln w)`.
pub fn importance_weights(log_weights: &[f64]) -> Vec<f64> {
    let max = log_weights
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    log_weights.iter().map(|&lw| libm::exp(lw - max)).collect()
}

pub fn effective_sample_size(weights: &[f64]) -> f64 {
    let sum: f64 = weights.iter().sum();
    let sum_sq: f64 = weights.iter().map(|w| w * w).sum();
    sum * sum / sum_sq
}

/// `Σ w_b h_b / Σ w_b` with its ESS and standard error.
pub fn weighted_estimate(weights: &[f64], values: &[f64]) -> Estimate {
    debug_assert_eq!(weights.len(), values.len());
    let sum: f64 = weights.iter().sum();
    let value = weights.iter().zip(values).map(|(w, h)| w * h).sum::<f64>() / sum;
    let var_num: f64 = weights
        .iter()
        .zip(values)
        .map(|(w, h)| {
            let dev = h - value;
            w * w * dev * dev
        })
        .sum();
    Estimate {
        value,
        ess: effective_sample_size(weights),
        std_error: libm::sqrt(var_num) / sum,
    }
}

/// Estimates the posterior expectation of `h(m)` from SIS draws.
pub fn estimate<F>(draws: &[SisDraw], h: F) -> Result<Estimate>
where
    F: Fn(&SisDraw) -> f64,
{
    if draws.is_empty() {
        return Err(Error::InvalidParameter(
            "estimate requires at least one draw",
        ));
    }
    let log_weights: Vec<f64> = draws.iter().map(|d| d.log_weight).collect();
    let weights = importance_weights(&log_weights);
    let values: Vec<f64> = draws.iter().map(h).collect();
    Ok(weighted_estimate(&weights, &values))
}

/// Per-block sufficient statistics of `m` over `data`, in rank order.
pub fn block_stats<K: ConjugateKernel>(
    m: &OrderedPartition,
    data: &[f64],
    kernel: &K,
) -> Vec<K::Stats> {
    m.blocks()
        .iter()
        .map(|b| kernel.stats_of(b.iter().map(|&i| data[i])))
        .collect()
}

/// `f(y | m, Y)` on `grid`:
/// `(Σ_j q_j) ∫ K(y|x) H(dx) + Σ_j p_j ∫ K(y|x) π(dx | D_j)`.
pub fn predictive_density<M, K>(
    m: &OrderedPartition,
    data: &[f64],
    rho: &M,
    kernel: &K,
    grid: &[f64],
) -> Result<Vec<f64>>
where
    M: IntensityMoments,
    K: ConjugateKernel,
{
    let weights: PredictionWeights = prediction_weights_from_sizes(&m.sizes(), rho)?;
    let stats = block_stats(m, data, kernel);
    let new_mass = weights.total_new();
    grid.iter()
        .map(|&y| {
            let mut f = new_mass * libm::exp(kernel.ln_prior_predictive(y));
            for (s, &lw) in stats.iter().zip(&weights.ln_join) {
                f += libm::exp(lw + kernel.ln_block_predictive(s, y)?);
            }
            Ok(f)
        })
        .collect()
}

/// `ln π(m) + Σ_j ln ∫ Π_{i∈D_j} K(y_i|x) H(dx)`: the unnormalised log
/// posterior mass of `m`.
pub fn ln_joint<M, K>(m: &OrderedPartition, data: &[f64], rho: &M, kernel: &K) -> Result<f64>
where
    M: IntensityMoments,
    K: ConjugateKernel,
{
    let prior = ln_prob_ordered(m, rho)?;
    let marginals: f64 = block_stats(m, data, kernel)
        .iter()
        .map(|s| kernel.ln_block_marginal(s))
        .sum();
    Ok(prior + marginals)
}

/// `|L(m) q(m) / (π(m) Π_j m(D_j)) - 1|` for a draw; zero up to rounding.
pub fn weight_identity_residual<M, K>(
    draw: &SisDraw,
    data: &[f64],
    rho: &M,
    kernel: &K,
) -> Result<f64>
where
    M: IntensityMoments,
    K: ConjugateKernel,
{
    let rhs = ln_joint(&draw.partition, data, rho, kernel)?;
    Ok(libm::fabs(libm::expm1(
        draw.log_weight + draw.log_proposal - rhs,
    )))
}
