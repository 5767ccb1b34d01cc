//! Tanh-sinh (double exponential) quadrature on the unit interval.
//!
//! The integrand receives both `u` and `1 - u`, each computed without
//! cancellation, so integrable algebraic or logarithmic singularities at either
//! endpoint are handled. Nodes at which `u` or `1 - u` underflows to zero are
//! skipped.

use crate::{Error, Result};

const T_MAX: f64 = 6.5;
const MAX_LEVEL: u32 = 12;

#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// Integrates `f(u, 1-u)` over `(0, 1)` to relative tolerance `rel_tol`.
pub fn integrate_unit<F>(f: F, rel_tol: f64) -> Result<Integral>
where
    F: Fn(f64, f64) -> f64,
{
    let node = |t: f64| -> f64 {
        let s = core::f64::consts::FRAC_PI_2 * libm::sinh(t);
        let e = libm::exp(-2.0 * libm::fabs(s));
        // u for t >= 0, 1-u for t >= 0 mirrored.
        let small = e / (1.0 + e);
        let large = 1.0 / (1.0 + e);
        let (u, v) = if s >= 0.0 {
            (large, small)
        } else {
            (small, large)
        };
        let ch = libm::cosh(s);
        let w = core::f64::consts::FRAC_PI_4 * libm::cosh(t) / (ch * ch);
        if u == 0.0 || v == 0.0 || w == 0.0 || !w.is_finite() {
            return 0.0;
        }
        let y = f(u, v);
        if y.is_finite() {
            w * y
        } else {
            0.0
        }
    };

    // Level 0: step h = 1.
    let mut h = 1.0;
    let mut sum = node(0.0);
    let mut k = 1.0;
    while k * h <= T_MAX {
        sum += node(k * h) + node(-k * h);
        k += 1.0;
    }
    let mut estimate = sum * h;
    let mut previous_diff = f64::INFINITY;
    for _level in 1..=MAX_LEVEL {
        h *= 0.5;
        // New nodes are the odd multiples of the halved step.
        let mut odd = 0.0;
        let mut j = 1.0;
        while j * h <= T_MAX {
            odd += node(j * h) + node(-j * h);
            j += 2.0;
        }
        sum += odd;
        let next = sum * h;
        let diff = libm::fabs(next - estimate);
        estimate = next;
        if diff <= rel_tol * libm::fabs(next) || (diff == 0.0 && previous_diff == 0.0) {
            return Ok(Integral {
                value: next,
                error: diff,
            });
        }
        previous_diff = diff;
    }
    Err(Error::Quadrature {
        estimate,
        error: previous_diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial() {
        let i = integrate_unit(|u, _| u * u, 1e-12).unwrap();
        assert_relative_eq!(i.value, 1.0 / 3.0, max_relative = 1e-13);
    }

    #[test]
    fn endpoint_singularities() {
        let i = integrate_unit(|u, _| libm::pow(u, -0.5), 1e-12).unwrap();
        assert_relative_eq!(i.value, 2.0, max_relative = 1e-12);
        let i = integrate_unit(|_, v| libm::pow(v, -0.7), 1e-12).unwrap();
        assert_relative_eq!(i.value, 1.0 / 0.3, max_relative = 1e-11);
        let i = integrate_unit(|u, _| -libm::log(u), 1e-12).unwrap();
        assert_relative_eq!(i.value, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn peaked_integrand() {
        // u^20 (1-u)^20 = B(21, 21)
        let exact = libm::exp(crate::special::ln_beta(21.0, 21.0));
        let i = integrate_unit(|u, v| libm::pow(u * v, 20.0), 1e-12).unwrap();
        assert_relative_eq!(i.value, exact, max_relative = 1e-11);
    }
}
