//! Independent reference computations for tests: adaptive Gauss–Kronrod
//! quadrature, ordered Bell numbers, the Ewens sampling formula, and the
//! intensities exercised across the suite.
#![allow(dead_code, clippy::excessive_precision)]

use ntr_core::levy::pd_tail;
use ntr_core::special::ln_gamma;
use ntr_core::LevyIntensity;

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525452938,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// 21-point Kronrod rule with embedded 10-point Gauss estimate.
fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    for i in 0..10 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod integral of `f` over `[a, b]` to absolute
/// tolerance `abs_tol`: the interval with the largest error estimate is
/// bisected until the summed estimate meets the tolerance.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> f64 {
    integrate_split(f, a, b, 1, abs_tol)
}

/// Like [`integrate`] but starting from `pieces` equal subintervals, so a
/// narrow peak on a wide range cannot hide between the first nodes.
pub fn integrate_split<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    pieces: usize,
    abs_tol: f64,
) -> f64 {
    let h = (b - a) / pieces as f64;
    let mut intervals: Vec<_> = (0..pieces)
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == pieces { b } else { lo + h };
            let (v, e) = gk21(&f, lo, hi);
            (lo, hi, v, e)
        })
        .collect();
    for _ in 0..5000 {
        let total_err: f64 = intervals.iter().map(|i| i.3).sum();
        let total: f64 = intervals.iter().map(|i| i.2.abs()).sum();
        if total_err <= abs_tol || total_err <= 1e-15 * total {
            break;
        }
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (lo, hi, _, _) = intervals.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (v1, e1) = gk21(&f, lo, mid);
        let (v2, e2) = gk21(&f, mid, hi);
        if !(v1.is_finite() && v2.is_finite()) {
            // Refinement reached a point where the integrand overflows; keep
            // the coarser estimate for this interval.
            let (v, e) = gk21(&f, lo, hi);
            intervals.push((lo, hi, v, 0.0 * e));
            continue;
        }
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
    }
    intervals.iter().map(|i| i.2).sum()
}

/// Integral to relative tolerance, using a first pass to set the scale.
pub fn integrate_rel<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let rough = integrate(&f, a, b, 1e-6).abs().max(1e-300);
    integrate(&f, a, b, rough * rel_tol)
}

/// Relative-tolerance integral over a wide stretch of the real line.
pub fn integrate_line<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let rough = integrate_split(&f, a, b, 64, 1e-6).abs().max(1e-300);
    integrate_split(&f, a, b, 64, rough * rel_tol)
}

/// `∫_0^1 f(u, 1-u) du` through `u = sin²(πs/2)`, which tames algebraic
/// singularities at both endpoints and supplies `1 - u = cos²(πs/2)` without
/// cancellation.
pub fn integrate_unit(f: impl Fn(f64, f64) -> f64, rel_tol: f64) -> f64 {
    use std::f64::consts::PI;
    integrate_rel(
        |s| {
            let (sin, cos) = (0.5 * PI * s).sin_cos();
            f(sin * sin, cos * cos) * 0.5 * PI * (PI * s).sin()
        },
        0.0,
        1.0,
        rel_tol,
    )
}

/// `∫_0^1 u^d (1-u)^r ρ(du)` from the explicit intensity density.
pub fn kappa_by_quadrature(rho: &Intensity, d: usize, r: usize) -> f64 {
    let density = rho.density();
    integrate_unit(
        |u, v| u.powi(d as i32) * v.powi(r as i32) * density(u, v),
        1e-12,
    )
}

/// `∫_0^1 (1 - (1-u)^n) ρ(du)`.
pub fn phi_by_quadrature(rho: &Intensity, n: usize) -> f64 {
    let density = rho.density();
    integrate_unit(
        |u, v| -((n as f64) * v.ln()).exp_m1() * density(u, v),
        1e-12,
    )
}

/// `∫_{u0}^1 ρ(dv)` by quadrature of the density.
pub fn tail_by_quadrature(rho: &Intensity, u0: f64) -> f64 {
    let density = rho.density();
    let width = 1.0 - u0;
    integrate_unit(|w, w_c| width * density(u0 + width * w, width * w_c), 1e-12)
}

/// Intensities with an explicit density, for quadrature oracles.
#[derive(Debug, Clone, Copy)]
pub enum Intensity {
    Beta(f64),
    Pd(f64, f64),
}

impl Intensity {
    pub fn build(self) -> LevyIntensity {
        match self {
            Intensity::Beta(t) => LevyIntensity::homogeneous_beta(t).unwrap(),
            Intensity::Pd(a, t) => LevyIntensity::poisson_dirichlet(a, t).unwrap(),
        }
    }

    /// Density `ρ(u)` evaluated from `(u, 1 - u)`.
    pub fn density(self) -> Box<dyn Fn(f64, f64) -> f64> {
        match self {
            Intensity::Beta(theta) => {
                Box::new(move |u: f64, v: f64| theta / u * v.powf(theta - 1.0))
            }
            Intensity::Pd(alpha, theta) => {
                let c =
                    (ln_gamma(theta + 2.0 - alpha) - ln_gamma(1.0 - alpha) - ln_gamma(1.0 + theta))
                        .exp();
                // -d/du of C u^{-α} (1-u)^θ
                Box::new(move |u: f64, v: f64| {
                    c * (alpha * u.powf(-alpha - 1.0) * v.powf(theta)
                        + theta * u.powf(-alpha) * v.powf(theta - 1.0))
                })
            }
        }
    }
}

pub const BETA_THETAS: [f64; 3] = [0.5, 1.0, 2.0];
pub const PD_PARAMS: [(f64, f64); 3] = [(0.0, 1.0), (0.3, 1.0), (0.5, 0.5)];

pub fn closed_form_intensities() -> Vec<(String, Intensity)> {
    let mut out: Vec<(String, Intensity)> = BETA_THETAS
        .iter()
        .map(|&t| (format!("beta(θ={t})"), Intensity::Beta(t)))
        .collect();
    out.extend(
        PD_PARAMS
            .iter()
            .map(|&(a, t)| (format!("pd(α={a},θ={t})"), Intensity::Pd(a, t))),
    );
    out
}

/// Generic-tail intensities whose tails are known in closed form.
pub fn generic_intensities() -> Vec<(String, LevyIntensity)> {
    vec![
        (
            "tail(beta θ=1)".into(),
            LevyIntensity::generic_tail(|u: f64| -u.ln()).unwrap(),
        ),
        (
            "tail(beta θ=2)".into(),
            LevyIntensity::generic_tail(|u: f64| 2.0 * (-u.ln() - (1.0 - u))).unwrap(),
        ),
        (
            "tail(pd α=0.3 θ=1)".into(),
            LevyIntensity::generic_tail(|u| pd_tail(0.3, 1.0, u)).unwrap(),
        ),
    ]
}

pub fn all_intensities() -> Vec<(String, LevyIntensity)> {
    let mut out: Vec<_> = closed_form_intensities()
        .into_iter()
        .map(|(name, i)| (name, i.build()))
        .collect();
    out.extend(generic_intensities());
    out
}

/// Ordered Bell (Fubini) numbers: `a(n) = Σ_{k=1}^{n} C(n,k) a(n-k)`.
pub fn ordered_bell(n: usize) -> u64 {
    let mut a = vec![1u64; n + 1];
    for m in 1..=n {
        let mut binom = 1u64;
        let mut total = 0u64;
        for k in 1..=m {
            binom = binom * (m - k + 1) as u64 / k as u64;
            total += binom * a[m - k];
        }
        a[m] = total;
    }
    a[n]
}

pub fn bell(n: usize) -> u64 {
    // Bell triangle.
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}

/// Ewens sampling formula `θ^k Γ(θ) / Γ(θ+n) Π (n_j - 1)!`.
pub fn ewens(theta: f64, sizes: &[usize]) -> f64 {
    let n: usize = sizes.iter().sum();
    let k = sizes.len() as f64;
    let ln = k * theta.ln() + ln_gamma(theta) - ln_gamma(theta + n as f64)
        + sizes.iter().map(|&s| ln_gamma(s as f64)).sum::<f64>();
    ln.exp()
}

/// Normal-Normal block marginal by quadrature over the location.
pub fn normal_block_marginal_by_quadrature(s: f64, a: f64, ys: &[f64]) -> f64 {
    let g = unnormalized_posterior(s, a, ys);
    integrate_line(g, -60.0, 60.0, 1e-12)
}

pub fn unnormalized_posterior(s: f64, a: f64, ys: &[f64]) -> impl Fn(f64) -> f64 + '_ {
    move |x: f64| {
        let prior = (-x * x / (2.0 * a)).exp() / (2.0 * std::f64::consts::PI * a).sqrt();
        ys.iter().fold(prior, |acc, y| {
            acc * (-(y - x) * (y - x) / (2.0 * s)).exp() / (2.0 * std::f64::consts::PI * s).sqrt()
        })
    }
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
