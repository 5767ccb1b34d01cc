mod common;

use common::*;
use ntr_core::sis::replicate_rng;
use ntr_core::{BlockStatistics, ConjugateKernel, NormalNormal};
use rand::Rng;

struct Case {
    s: f64,
    a: f64,
    ys: Vec<f64>,
    y_new: f64,
}

fn random_cases(count: usize) -> Vec<Case> {
    let mut rng = replicate_rng(2024, 0);
    (0..count)
        .map(|_| {
            let d = rng.random_range(1..=4);
            Case {
                s: rng.random_range(0.2..3.0),
                a: rng.random_range(0.2..10.0),
                ys: (0..d).map(|_| rng.random_range(-3.0..3.0)).collect(),
                y_new: rng.random_range(-3.0..3.0),
            }
        })
        .collect()
}

#[test]
fn block_marginal_matches_quadrature() {
    for case in random_cases(100) {
        let k = NormalNormal::new(case.s, case.a).unwrap();
        let closed = k
            .ln_block_marginal(&BlockStatistics::from_values(&case.ys))
            .exp();
        let quad = normal_block_marginal_by_quadrature(case.s, case.a, &case.ys);
        assert!(
            rel_diff(closed, quad) < 1e-8,
            "s={} A={} ys={:?}",
            case.s,
            case.a,
            case.ys
        );
    }
}

#[test]
fn two_observation_marginal() {
    let k = NormalNormal::new(1.0, 1.0).unwrap();
    let ys = [0.5, -1.25];
    let closed = k
        .ln_block_marginal(&BlockStatistics::from_values(&ys))
        .exp();
    let quad = normal_block_marginal_by_quadrature(1.0, 1.0, &ys);
    assert!(rel_diff(closed, quad) < 1e-8);
}

#[test]
fn predictive_matches_quadrature() {
    for case in random_cases(100) {
        let k = NormalNormal::new(case.s, case.a).unwrap();
        let stats = BlockStatistics::from_values(&case.ys);
        let closed = k.ln_block_predictive(&stats, case.y_new).unwrap().exp();
        let g = unnormalized_posterior(case.s, case.a, &case.ys);
        let num = integrate_line(
            |x| {
                let z = case.y_new - x;
                (-z * z / (2.0 * case.s)).exp() / (2.0 * std::f64::consts::PI * case.s).sqrt()
                    * g(x)
            },
            -60.0,
            60.0,
            1e-12,
        );
        let den = integrate_line(&g, -60.0, 60.0, 1e-12);
        assert!(rel_diff(closed, num / den) < 1e-8);
    }
}

#[test]
fn posterior_moments_match_quadrature() {
    for case in random_cases(100) {
        let k = NormalNormal::new(case.s, case.a).unwrap();
        let (mean, var) = k
            .posterior_params(&BlockStatistics::from_values(&case.ys))
            .unwrap();
        let g = unnormalized_posterior(case.s, case.a, &case.ys);
        let z = integrate_line(&g, -60.0, 60.0, 1e-12);
        let m1 = integrate_split(|x| x * g(x), -60.0, 60.0, 64, 1e-14 * z) / z;
        let m2 = integrate_split(|x| (x - m1) * (x - m1) * g(x), -60.0, 60.0, 64, 1e-14 * z) / z;
        let scale = mean.abs().max(var.sqrt());
        assert!((mean - m1).abs() / scale < 1e-8, "mean {mean} vs {m1}");
        assert!(rel_diff(var, m2) < 1e-8, "var {var} vs {m2}");
    }
}

#[test]
fn posterior_params_follow_precision_form() {
    for case in random_cases(100) {
        let k = NormalNormal::new(case.s, case.a).unwrap();
        let stats = BlockStatistics::from_values(&case.ys);
        let (mean, var) = k.posterior_params(&stats).unwrap();
        let sigma = 1.0 / (case.ys.len() as f64 / case.s + 1.0 / case.a);
        assert_eq!(var, sigma);
        assert_eq!(mean, sigma / case.s * stats.sum_y);
    }
}

#[test]
fn ratio_identity() {
    for case in random_cases(100) {
        let k = NormalNormal::new(case.s, case.a).unwrap();
        let stats = BlockStatistics::from_values(&case.ys);
        let mut grown = stats;
        grown.push(case.y_new);
        let ratio = (k.ln_block_marginal(&grown) - k.ln_block_marginal(&stats)).exp();
        let pred = k.ln_block_predictive(&stats, case.y_new).unwrap().exp();
        assert!(rel_diff(ratio, pred) < 1e-10);
    }
}
