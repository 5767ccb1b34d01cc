//! Stick-breaking sampler for the two-parameter Poisson–Dirichlet law.
//!
//! `P_k = W_k Π_{i<k} (1 - W_i)` with independent `W_k ~ Beta(1-α, θ+kα)`.
//! Sticks are broken lazily, only as far as the uniforms drawn for the items
//! require, and stop once the unbroken remainder drops below
//! [`RESIDUAL_MASS`] or [`MAX_ATOMS`] sticks exist. An item landing in the
//! remainder gets a fresh atom of its own, as a draw from the non-atomic base
//! measure would.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Beta, Distribution};

use crate::partition::Partition;
use crate::{Error, Result};

pub const RESIDUAL_MASS: f64 = 1e-12;
pub const MAX_ATOMS: usize = 10_000;

/// Draws `n` labels from a stick-breaking measure and returns the induced partition.
pub fn stick_breaking_sample<R: Rng + ?Sized>(
    alpha: f64,
    theta: f64,
    n: usize,
    rng: &mut R,
) -> Result<Partition> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidParameter("alpha must lie in [0, 1)"));
    }
    if !(theta.is_finite() && theta > 0.0) {
        return Err(Error::InvalidParameter("theta must be positive and finite"));
    }
    let mut sticks: Vec<f64> = Vec::new();
    let mut broken = 0.0; // Σ sticks
    let mut remaining = 1.0;
    let mut labels = Vec::with_capacity(n);
    for item in 0..n {
        let u: f64 = rng.random();
        let mut cumulative = 0.0;
        let mut label = None;
        for (k, &p) in sticks.iter().enumerate() {
            cumulative += p;
            if u < cumulative {
                label = Some(k);
                break;
            }
        }
        while label.is_none() && remaining >= RESIDUAL_MASS && sticks.len() < MAX_ATOMS {
            let k = sticks.len() + 1;
            let beta = Beta::new(1.0 - alpha, theta + k as f64 * alpha)
                .map_err(|_| Error::InvalidParameter("stick-breaking beta parameters"))?;
            let w: f64 = beta.sample(rng);
            let p = remaining * w;
            remaining *= 1.0 - w;
            sticks.push(p);
            broken += p;
            cumulative = broken;
            if u < cumulative {
                label = Some(k - 1);
            }
        }
        labels.push(label.unwrap_or(MAX_ATOMS + item));
    }
    Ok(Partition::from_labels(&labels))
}
