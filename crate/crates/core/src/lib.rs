//! Neutral-to-the-right species sampling mixtures.
//!
//! A homogeneous Lévy intensity `ρ(du)` on `(0, 1)` induces a law on *ordered*
//! partitions of `{1..n}`: blocks are ranked by the tied latent survival times
//! they share. That law has a product form in the moment integrals
//! `κ_{d,r}(ρ) = ∫ u^d (1-u)^r ρ(du)` and `φ(n) = ∫ (1 - (1-u)^n) ρ(du)`, which
//! makes sequential seating (a ranked, weighted Chinese restaurant process)
//! straightforward. Combined with a conjugate kernel this gives an importance
//! sampler for the posterior over ordered partitions and a Bayesian predictive
//! density estimator.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! Modules:
//! - [`levy`]: intensities and their moment functionals.
//! - [`partition`]: ordered and unordered set partitions, exhaustive enumeration.
//! - [`eppf`]: exact ordered/unordered partition probabilities and prediction weights.
//! - [`kernel`]: conjugate kernel/base-measure pairs.
//! - [`sis`]: the ranked weighted Chinese restaurant sampler and its estimators.
//! - [`stick`]: stick-breaking sampler for the two-parameter Poisson–Dirichlet law.
//! - [`oracle`]: brute-force posterior over all ordered partitions (small `n`).
//!
//! ```
//! use ntr_core::sis::{estimate, run_sis};
//! use ntr_core::{LevyIntensity, MomentTable, NormalNormal};
//!
//! let rho = MomentTable::new(LevyIntensity::poisson_dirichlet(0.3, 1.0)?, 8)?;
//! let kernel = NormalNormal::new(1.0, 1.0)?;
//! let data = [-1.2, -0.4, 0.3, 1.5, 2.1];
//! let draws = run_sis(&data, &rho, &kernel, 2_000, 42)?;
//! let clusters = estimate(&draws, |d| d.partition.num_blocks() as f64)?;
//! assert!(clusters.value > 1.0 && clusters.value < 5.0);
//! # Ok::<(), ntr_core::Error>(())
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod eppf;
mod error;
pub mod kernel;
pub mod levy;
pub mod oracle;
pub mod partition;
pub mod quadrature;
pub mod sis;
pub mod special;
pub mod stick;

pub use error::{Error, Result};
pub use kernel::{BlockStatistics, ConjugateKernel, NormalNormal, UnitKernel};
pub use levy::{IntensityMoments, LevyIntensity, MomentTable};
pub use partition::{OrderedPartition, Partition};
pub use sis::{Estimate, SisDraw};
