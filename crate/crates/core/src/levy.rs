//! Homogeneous Lévy intensities on `(0, 1)` and their moment functionals.
//!
//! Every intensity is normalised so that `∫ u ρ(du) = 1`, which makes
//! `κ_{1,0} = φ(1) = 1`. All partition probabilities downstream are products
//! and ratios of
//!
//! ```text
//! κ_{d,r} = ∫ u^d (1-u)^r ρ(du)        d ≥ 1, r ≥ 0
//! φ(n)    = ∫ (1 - (1-u)^n) ρ(du)      n ≥ 1
//! ```
//!
//! which are exposed in log space.
//!
//! Closed forms:
//! - homogeneous beta `ρ(du) = θ u^{-1} (1-u)^{θ-1} du`:
//!   `κ_{d,r} = θ B(d, r+θ)`, `φ(n) = Σ_{l=1}^{n} θ / (θ+l-1)`.
//! - two-parameter Poisson–Dirichlet with tail mass
//!   `T(u) = C u^{-α} (1-u)^θ`, `C = Γ(θ+2-α) / (Γ(1-α) Γ(1+θ))`.
//!   Differentiating the tail gives the density, and with `a = d-α`, `b = r+θ`
//!   `κ_{d,r} = C B(a, b) (α r + θ d) / (a + b)`, while integrating by parts
//!   `φ(n) = n C B(1-α, n+θ)`.
//!
//! A [`LevyIntensity::GenericTail`] is described only by its tail mass
//! `T(u) = ∫_u^1 ρ(dv)`; integrating by parts turns both functionals into
//! integrals of `T` against bounded polynomial weights:
//!
//! ```text
//! κ_{d,r} = ∫ T(u) u^{d-1} (1-u)^{r-1} (d (1-u) - r u) du
//! φ(n)    = ∫ n (1-u)^{n-1} T(u) du
//! ```

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::quadrature::integrate_unit;
use crate::special::{ln_beta, ln_gamma};
use crate::{Error, Result};

/// Relative tolerance for quadrature-backed moments.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;
/// Tolerance on `∫ T(u) du = 1` accepted when building a generic intensity.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-8;

/// Tail-mass function `u ↦ ∫_u^1 ρ(dv)`.
#[derive(Clone)]
pub struct TailMass(Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl TailMass {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        TailMass(Arc::new(f))
    }

    pub fn eval(&self, u: f64) -> f64 {
        (self.0)(u)
    }
}

impl fmt::Debug for TailMass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("TailMass(..)")
    }
}

#[derive(Debug, Clone)]
pub enum LevyIntensity {
    HomogeneousBeta { theta: f64 },
    PoissonDirichlet { alpha: f64, theta: f64 },
    GenericTail(TailMass),
}

/// Access to `ln κ_{d,r}` and `ln φ(n)`.
pub trait IntensityMoments {
    fn ln_kappa(&self, d: usize, r: usize) -> Result<f64>;
    fn ln_phi(&self, n: usize) -> Result<f64>;
}

impl<T: IntensityMoments + ?Sized> IntensityMoments for &T {
    fn ln_kappa(&self, d: usize, r: usize) -> Result<f64> {
        (**self).ln_kappa(d, r)
    }
    fn ln_phi(&self, n: usize) -> Result<f64> {
        (**self).ln_phi(n)
    }
}

/// Tail mass of the two-parameter Poisson–Dirichlet intensity at `u`.
pub fn pd_tail(alpha: f64, theta: f64, u: f64) -> f64 {
    if u >= 1.0 {
        return 0.0;
    }
    let ln_c = ln_gamma(theta + 2.0 - alpha) - ln_gamma(1.0 - alpha) - ln_gamma(1.0 + theta);
    libm::exp(ln_c - alpha * libm::log(u) + theta * libm::log1p(-u))
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && theta > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter("theta must be positive and finite"))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::InvalidParameter("alpha must lie in [0, 1)"))
    }
}

fn finite_log(value: f64, what: &'static str, d: usize, r: usize) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { what, d, r })
    }
}

fn positive_log(value: f64, what: &'static str, d: usize, r: usize) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(libm::log(value))
    } else {
        Err(Error::NonFinite { what, d, r })
    }
}

impl LevyIntensity {
    pub fn homogeneous_beta(theta: f64) -> Result<Self> {
        check_theta(theta)?;
        Ok(LevyIntensity::HomogeneousBeta { theta })
    }

    pub fn poisson_dirichlet(alpha: f64, theta: f64) -> Result<Self> {
        check_alpha(alpha)?;
        check_theta(theta)?;
        Ok(LevyIntensity::PoissonDirichlet { alpha, theta })
    }

    /// Builds an intensity from its tail mass, rejecting tails whose
    /// integral `∫ T(u) du = ∫ u ρ(du)` is not one.
    pub fn generic_tail<F>(tail: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let rho = LevyIntensity::GenericTail(TailMass::new(tail));
        let k10 = rho.kappa(1, 0)?;
        if libm::fabs(k10 - 1.0) > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidParameter("tail mass must integrate to one"));
        }
        Ok(rho)
    }

    /// Tail mass `∫_u^1 ρ(dv)`.
    pub fn tail(&self, u: f64) -> f64 {
        match self {
            LevyIntensity::HomogeneousBeta { theta } => {
                // θ ∫_u^1 v^{-1} (1-v)^{θ-1} dv
                let theta = *theta;
                integrate_unit(
                    |s, t| {
                        // v = u + (1-u) s, 1 - v = (1-u) t
                        let v = u + (1.0 - u) * s;
                        theta * (1.0 - u) * libm::pow((1.0 - u) * t, theta - 1.0) / v
                    },
                    QUADRATURE_TOLERANCE,
                )
                .map(|i| i.value)
                .unwrap_or(f64::NAN)
            }
            LevyIntensity::PoissonDirichlet { alpha, theta } => pd_tail(*alpha, *theta, u),
            LevyIntensity::GenericTail(t) => t.eval(u),
        }
    }

    pub fn kappa(&self, d: usize, r: usize) -> Result<f64> {
        self.ln_kappa(d, r).map(libm::exp)
    }

    pub fn phi(&self, n: usize) -> Result<f64> {
        match self {
            LevyIntensity::HomogeneousBeta { theta } => {
                if n == 0 {
                    return Err(Error::InvalidParameter("phi requires n >= 1"));
                }
                Ok(beta_phi(*theta, n))
            }
            _ => self.ln_phi(n).map(libm::exp),
        }
    }
}

/// `Σ_{l=1}^{n} θ/(θ+l-1)`, summed in increasing `l`.
fn beta_phi(theta: f64, n: usize) -> f64 {
    (1..=n).map(|l| theta / (theta + (l - 1) as f64)).sum()
}

impl IntensityMoments for LevyIntensity {
    fn ln_kappa(&self, d: usize, r: usize) -> Result<f64> {
        if d == 0 {
            return Err(Error::InvalidParameter("kappa requires d >= 1"));
        }
        let (df, rf) = (d as f64, r as f64);
        match self {
            LevyIntensity::HomogeneousBeta { theta } => {
                finite_log(libm::log(*theta) + ln_beta(df, rf + theta), "kappa", d, r)
            }
            LevyIntensity::PoissonDirichlet { alpha, theta } => {
                let (alpha, theta) = (*alpha, *theta);
                let ln_c =
                    ln_gamma(theta + 2.0 - alpha) - ln_gamma(1.0 - alpha) - ln_gamma(1.0 + theta);
                let a = df - alpha;
                let b = rf + theta;
                let v =
                    ln_c + ln_beta(a, b) + libm::log(alpha * rf + theta * df) - libm::log(a + b);
                finite_log(v, "kappa", d, r)
            }
            LevyIntensity::GenericTail(tail) => {
                let dm1 = (d - 1) as f64;
                let integral = integrate_unit(
                    |u, v| {
                        let weight = if r == 0 {
                            df * libm::pow(u, dm1)
                        } else {
                            libm::pow(u, dm1) * libm::pow(v, (r - 1) as f64) * (df * v - rf * u)
                        };
                        weight * tail.eval(u)
                    },
                    QUADRATURE_TOLERANCE,
                )?;
                positive_log(integral.value, "kappa", d, r)
            }
        }
    }

    fn ln_phi(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidParameter("phi requires n >= 1"));
        }
        let nf = n as f64;
        match self {
            LevyIntensity::HomogeneousBeta { theta } => {
                positive_log(beta_phi(*theta, n), "phi", 0, n)
            }
            LevyIntensity::PoissonDirichlet { alpha, theta } => {
                let (alpha, theta) = (*alpha, *theta);
                let ln_c =
                    ln_gamma(theta + 2.0 - alpha) - ln_gamma(1.0 - alpha) - ln_gamma(1.0 + theta);
                finite_log(
                    libm::log(nf) + ln_c + ln_beta(1.0 - alpha, nf + theta),
                    "phi",
                    0,
                    n,
                )
            }
            LevyIntensity::GenericTail(tail) => {
                let integral = integrate_unit(
                    |u, v| nf * libm::pow(v, nf - 1.0) * tail.eval(u),
                    QUADRATURE_TOLERANCE,
                )?;
                positive_log(integral.value, "phi", 0, n)
            }
        }
    }
}

/// Precomputed `ln κ_{d,r}` for `d ≥ 1, d + r ≤ max_n` and `ln φ(1..=max_n)`.
///
/// Lookups outside the table fall through to the underlying intensity.
#[derive(Debug, Clone)]
pub struct MomentTable {
    intensity: LevyIntensity,
    max_n: usize,
    // Row d-1 holds r = 0..=max_n-d.
    kappa: Vec<Vec<f64>>,
    phi: Vec<f64>,
}

impl MomentTable {
    pub fn new(intensity: LevyIntensity, max_n: usize) -> Result<Self> {
        let mut kappa = Vec::with_capacity(max_n);
        for d in 1..=max_n {
            let row = (0..=max_n - d)
                .map(|r| intensity.ln_kappa(d, r))
                .collect::<Result<Vec<_>>>()?;
            kappa.push(row);
        }
        let phi = (1..=max_n)
            .map(|n| intensity.ln_phi(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            intensity,
            max_n,
            kappa,
            phi,
        })
    }

    pub fn intensity(&self) -> &LevyIntensity {
        &self.intensity
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }
}

impl IntensityMoments for MomentTable {
    fn ln_kappa(&self, d: usize, r: usize) -> Result<f64> {
        if d >= 1 && d + r <= self.max_n {
            Ok(self.kappa[d - 1][r])
        } else {
            self.intensity.ln_kappa(d, r)
        }
    }

    fn ln_phi(&self, n: usize) -> Result<f64> {
        if n >= 1 && n <= self.max_n {
            Ok(self.phi[n - 1])
        } else {
            self.intensity.ln_phi(n)
        }
    }
}
