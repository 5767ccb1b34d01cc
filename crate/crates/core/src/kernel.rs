//! Conjugate kernel / base-measure pairs.
//!
//! A kernel supplies, for a block of observations that share one latent
//! location `x ~ H`, the block marginal `∫ Π_i K(y_i | x) H(dx)`, the
//! predictive `∫ K(y | x) π(dx | block)`, and a draw from the block posterior.
//!
//! [`NormalNormal`] is the Normal location mixture with `K(y | x) = N(y; x, s)`
//! and `H = N(0, A)`. All its formulas come from standard Normal conjugacy.
//! The occupied-table seating score is the conjugate predictive
//! `N(y; μ_j, s + σ_j)`, pinned down by
//! `marginal(block ∪ {y}) = marginal(block) · predictive(block, y)`.

use core::fmt::Debug;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::special::ln_normal_pdf;
use crate::{Error, Result};

/// Smallest admissible kernel variance.
pub const MIN_KERNEL_VARIANCE: f64 = 1e-12;

pub trait ConjugateKernel {
    type Stats: Clone + Default + Debug;
    type Location;

    fn observe(&self, stats: &mut Self::Stats, y: f64);

    /// `ln ∫ Π_{i ∈ block} K(y_i | x) H(dx)`; zero for an empty block.
    fn ln_block_marginal(&self, stats: &Self::Stats) -> f64;

    /// `ln ∫ K(y | x) π(dx | block)` for a nonempty block.
    fn ln_block_predictive(&self, stats: &Self::Stats, y: f64) -> Result<f64>;

    /// `ln ∫ K(y | x) H(dx)`.
    fn ln_prior_predictive(&self, y: f64) -> f64 {
        let mut stats = Self::Stats::default();
        self.observe(&mut stats, y);
        self.ln_block_marginal(&stats)
    }

    fn sample_location<R: Rng + ?Sized>(
        &self,
        stats: &Self::Stats,
        rng: &mut R,
    ) -> Result<Self::Location>;

    fn stats_of<I: IntoIterator<Item = f64>>(&self, ys: I) -> Self::Stats {
        let mut stats = Self::Stats::default();
        ys.into_iter().for_each(|y| self.observe(&mut stats, y));
        stats
    }
}

/// Sufficient statistics of one block.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BlockStatistics {
    pub count: usize,
    pub sum_y: f64,
    pub sum_sq: f64,
}

impl BlockStatistics {
    pub fn from_values(ys: &[f64]) -> Self {
        let mut s = Self::default();
        ys.iter().for_each(|&y| s.push(y));
        s
    }

    pub fn push(&mut self, y: f64) {
        self.count += 1;
        self.sum_y += y;
        self.sum_sq += y * y;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalNormal {
    kernel_variance: f64,
    prior_variance: f64,
}

impl NormalNormal {
    pub fn new(kernel_variance: f64, prior_variance: f64) -> Result<Self> {
        if !(kernel_variance.is_finite() && kernel_variance >= MIN_KERNEL_VARIANCE) {
            return Err(Error::InvalidParameter(
                "kernel variance must be at least 1e-12",
            ));
        }
        if !(prior_variance.is_finite() && prior_variance > 0.0) {
            return Err(Error::InvalidParameter("prior variance must be positive"));
        }
        Ok(Self {
            kernel_variance,
            prior_variance,
        })
    }

    pub fn kernel_variance(&self) -> f64 {
        self.kernel_variance
    }

    pub fn prior_variance(&self) -> f64 {
        self.prior_variance
    }

    /// Posterior `(mean, variance)` of the block location:
    /// `1/σ = d/s + 1/A`, `μ = (σ/s) Σ y`.
    pub fn posterior_params(&self, stats: &BlockStatistics) -> Result<(f64, f64)> {
        if stats.count == 0 {
            return Err(Error::EmptyBlock);
        }
        let variance =
            1.0 / (stats.count as f64 / self.kernel_variance + 1.0 / self.prior_variance);
        let mean = variance / self.kernel_variance * stats.sum_y;
        Ok((mean, variance))
    }
}

impl ConjugateKernel for NormalNormal {
    type Stats = BlockStatistics;
    type Location = f64;

    fn observe(&self, stats: &mut BlockStatistics, y: f64) {
        stats.push(y);
    }

    fn ln_block_marginal(&self, stats: &BlockStatistics) -> f64 {
        if stats.count == 0 {
            return 0.0;
        }
        let s = self.kernel_variance;
        let a = self.prior_variance;
        let d = stats.count as f64;
        let quad = stats.sum_sq - a * stats.sum_y * stats.sum_y / (s + d * a);
        -0.5 * d * libm::log(2.0 * core::f64::consts::PI * s)
            - 0.5 * libm::log1p(d * a / s)
            - quad / (2.0 * s)
    }

    fn ln_block_predictive(&self, stats: &BlockStatistics, y: f64) -> Result<f64> {
        let (mean, variance) = self.posterior_params(stats)?;
        Ok(ln_normal_pdf(y, mean, self.kernel_variance + variance))
    }

    fn ln_prior_predictive(&self, y: f64) -> f64 {
        ln_normal_pdf(y, 0.0, self.kernel_variance + self.prior_variance)
    }

    fn sample_location<R: Rng + ?Sized>(
        &self,
        stats: &BlockStatistics,
        rng: &mut R,
    ) -> Result<f64> {
        let (mean, variance) = self.posterior_params(stats)?;
        let normal = Normal::new(mean, libm::sqrt(variance))
            .map_err(|_| Error::InvalidParameter("posterior variance"))?;
        Ok(normal.sample(rng))
    }
}

/// The kernel `K ≡ 1`: every block integral is one, so seating follows the
/// prior prediction weights exactly.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UnitKernel;

impl ConjugateKernel for UnitKernel {
    type Stats = BlockStatistics;
    type Location = ();

    fn observe(&self, stats: &mut BlockStatistics, y: f64) {
        stats.push(y);
    }

    fn ln_block_marginal(&self, _stats: &BlockStatistics) -> f64 {
        0.0
    }

    fn ln_block_predictive(&self, stats: &BlockStatistics, _y: f64) -> Result<f64> {
        if stats.count == 0 {
            return Err(Error::EmptyBlock);
        }
        Ok(0.0)
    }

    fn ln_prior_predictive(&self, _y: f64) -> f64 {
        0.0
    }

    fn sample_location<R: Rng + ?Sized>(
        &self,
        _stats: &BlockStatistics,
        _rng: &mut R,
    ) -> Result<()> {
        Ok(())
    }
}
