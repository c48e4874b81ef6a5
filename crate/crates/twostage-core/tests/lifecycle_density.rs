//! Truncated-normal density: the adaptive quadrature against the error
//! function closed forms, and the behaviour of the quadrature solver route.

use statrs::distribution::{ContinuousCDF, Normal};
use twostage_core::{
    optimal_prices_given_theta, solve_theta_star, solve_theta_star_with_density, total_profit,
    total_profit_with_density, DemandDensity, ModelParams,
};

fn bench_params() -> ModelParams {
    ModelParams {
        r0: 0.7,
        ..ModelParams::default()
    }
}

/// Closed-form mass of the truncated normal via the standard normal CDF.
fn cdf_mass(mu: f64, sigma: f64, t0: f64, t1: f64) -> f64 {
    let n = Normal::new(mu, sigma).unwrap();
    (n.cdf(t1) - n.cdf(t0)) / (n.cdf(1.0) - n.cdf(0.0))
}

/// Closed form of ∫ λ(t) e^{−alpha t} dt: completing the square shifts the
/// location by alpha·sigma² and scales by e^{−alpha·mu + alpha²sigma²/2}.
fn cdf_discounted(mu: f64, sigma: f64, alpha: f64, t0: f64, t1: f64) -> f64 {
    let base = Normal::new(mu, sigma).unwrap();
    let shifted = Normal::new(mu - alpha * sigma * sigma, sigma).unwrap();
    let scale = (-alpha * mu + 0.5 * alpha * alpha * sigma * sigma).exp();
    scale * (shifted.cdf(t1) - shifted.cdf(t0)) / (base.cdf(1.0) - base.cdf(0.0))
}

#[test]
fn quadrature_matches_the_cdf_closed_forms() {
    for (mu, sigma) in [(0.5, 0.2), (0.3, 0.15), (0.7, 0.4)] {
        let d = DemandDensity::truncated_normal(mu, sigma).unwrap();
        for (t0, t1) in [(0.0, 1.0), (0.0, 0.37), (0.25, 0.8), (0.9, 1.0)] {
            let got = d.mass(t0, t1).unwrap();
            let want = cdf_mass(mu, sigma, t0, t1);
            assert!(
                (got - want).abs() < 1e-9,
                "mass({t0},{t1}) mu={mu} sigma={sigma}: {got} vs {want}"
            );
            for alpha in [0.1, 0.7] {
                let got = d.discounted_mass(t0, t1, alpha).unwrap();
                let want = cdf_discounted(mu, sigma, alpha, t0, t1);
                assert!(
                    (got - want).abs() < 1e-9,
                    "discounted({t0},{t1}) alpha={alpha}: {got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn uniform_route_delegates_to_the_closed_forms() {
    let p = bench_params();
    let d = DemandDensity::uniform();
    let sol = solve_theta_star_with_density(&p, &d).unwrap();
    let closed = solve_theta_star(&p).unwrap();
    assert_eq!(sol.theta, closed.theta);
    assert_eq!(sol.profit, closed.profit);
}

#[test]
fn lifecycle_hump_moves_the_optimum_but_keeps_the_markdown() {
    let p = bench_params();
    let d = DemandDensity::truncated_normal(0.5, 0.2).unwrap();
    let sol = solve_theta_star_with_density(&p, &d).unwrap();
    assert!(sol.theta > 0.0 && sol.theta < 1.0);
    assert!(sol.p1 > sol.p2, "markdown must survive the density change");
    // Local maximality of the golden-section optimum.
    for eps in [1e-3, 5e-3] {
        let left = total_profit_with_density(&p, &d, sol.theta - eps).unwrap();
        let right = total_profit_with_density(&p, &d, sol.theta + eps).unwrap();
        assert!(sol.profit >= left && sol.profit >= right);
    }
}

#[test]
fn quadrature_prices_satisfy_first_order_conditions() {
    let p = bench_params();
    let d = DemandDensity::truncated_normal(0.5, 0.2).unwrap();
    let theta = 0.45;
    let (p1, p2) =
        twostage_core::continuous::optimal_prices_with_density(&p, &d, theta).unwrap();
    // Stationarity of the raw stage profits in each price.
    let m1 = d.mass(0.0, theta).unwrap();
    let k1 = p.c * d.discounted_mass(0.0, theta, p.alpha).unwrap();
    let m2 = d.mass(theta, 1.0).unwrap();
    let k2 = p.c * d.discounted_mass(theta, 1.0, p.alpha).unwrap();
    let pi1 = |q: f64| (q * m1 - k1) / q.powf(p.gamma);
    let pi2 = |q: f64| (q * m2 - k2) / q.powf(p.gamma);
    let h = 1e-6;
    let d1 = (pi1(p1 + h) - pi1(p1 - h)) / (2.0 * h);
    let d2 = (pi2(p2 + h) - pi2(p2 - h)) / (2.0 * h);
    assert!(d1.abs() < 1e-8, "stage-1 gradient {d1}");
    assert!(d2.abs() < 1e-8, "stage-2 gradient {d2}");
}

#[test]
fn uniform_closed_form_agrees_with_density_route_pointwise() {
    let p = bench_params();
    let d = DemandDensity::uniform();
    for theta in [0.2, 0.5, 0.8] {
        let a = total_profit(&p, theta).unwrap();
        let b = total_profit_with_density(&p, &d, theta).unwrap();
        assert!((a - b).abs() < 1e-12);
        let (c1, c2) = optimal_prices_given_theta(&p, theta).unwrap();
        let (q1, q2) =
            twostage_core::continuous::optimal_prices_with_density(&p, &d, theta).unwrap();
        assert!((c1 - q1).abs() < 1e-12 && (c2 - q2).abs() < 1e-12);
    }
}
