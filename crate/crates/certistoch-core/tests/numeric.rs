//! Oracle tests for the shared numerical plumbing: quadrature against exact
//! integrals, special functions against high-precision reference values,
//! the optimizer and integer search against brute force, and stream-RNG
//! reproducibility.

use approx::assert_relative_eq;
use certistoch_core::numeric::interval::Interval1D;
use certistoch_core::numeric::rng::RngStream;
use certistoch_core::numeric::special::{gamma, hyp2f1_regularized, ln_gamma, upper_gamma};
use certistoch_core::numeric::{
    adaptive_quad, minimize_1d, minimize_1d_linear, smallest_integer_satisfying,
};
use proptest::prelude::*;

fn iv(lo: f64, hi: f64) -> Interval1D {
    Interval1D::new(lo, hi).unwrap()
}

#[test]
fn quad_polynomial_is_exact() {
    let v = adaptive_quad(&|x: f64| 3.0 * x * x, iv(0.0, 1.0), 1e-12).unwrap();
    assert_relative_eq!(v, 1.0, max_relative = 1e-12);
}

#[test]
fn quad_halfline_exponential() {
    let v = adaptive_quad(&|x: f64| (-x).exp(), iv(0.0, f64::INFINITY), 1e-12).unwrap();
    assert_relative_eq!(v, 1.0, max_relative = 1e-10);
}

#[test]
fn quad_halfline_gaussian() {
    let v = adaptive_quad(&|x: f64| (-x * x).exp(), iv(0.0, f64::INFINITY), 1e-12).unwrap();
    // Reference: √π/2.
    assert_relative_eq!(v, 0.886_226_925_452_758_01, max_relative = 1e-10);
}

#[test]
fn quad_integrable_endpoint_singularity() {
    let v = adaptive_quad(&|x: f64| x.ln(), iv(0.0, 1.0), 1e-10).unwrap();
    assert_relative_eq!(v, -1.0, max_relative = 1e-7);
}

#[test]
fn gamma_matches_factorials_and_reference() {
    assert_relative_eq!(gamma(5.0).unwrap(), 24.0, max_relative = 1e-14);
    assert_relative_eq!(
        gamma(0.5).unwrap(),
        core::f64::consts::PI.sqrt(),
        max_relative = 1e-14
    );
    assert!(gamma(0.0).is_err());
    assert!(gamma(-2.0).is_err());
}

#[test]
fn ln_gamma_consistent_with_gamma() {
    for z in [0.3, 1.0, 2.5, 7.0, 20.0] {
        assert_relative_eq!(
            ln_gamma(z).unwrap(),
            gamma(z).unwrap().ln(),
            max_relative = 1e-12
        );
    }
}

#[test]
fn upper_gamma_reference_values() {
    // Γ(1, x) = e^{−x} exactly.
    for x in [0.1, 1.0, 3.0, 10.0] {
        assert_relative_eq!(upper_gamma(1.0, x).unwrap(), (-x).exp(), max_relative = 1e-12);
    }
    // High-precision references.
    assert_relative_eq!(
        upper_gamma(2.5, 1.3).unwrap(),
        1.012_113_600_703_203_4,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        upper_gamma(0.5, 4.0).unwrap(),
        0.008_291_069_380_672_667_4,
        max_relative = 1e-12
    );
}

#[test]
fn hyp2f1_regularized_reference_values() {
    // ₂F₁(1,1;2;z) = −ln(1−z)/z, so the regularized value divides by Γ(2)=1.
    for z in [0.1, 0.4, 0.8] {
        assert_relative_eq!(
            hyp2f1_regularized(1.0, 1.0, 2.0, z).unwrap(),
            -(1.0 - z).ln() / z,
            max_relative = 1e-12
        );
    }
    assert_relative_eq!(
        hyp2f1_regularized(0.3, 0.7, 1.9, 0.4).unwrap(),
        1.094_731_015_157_799_3,
        max_relative = 1e-12
    );
}

#[test]
fn minimizer_finds_quadratic_minimum() {
    let res = minimize_1d_linear(&|x: f64| (x - 3.0) * (x - 3.0), iv(0.0, 10.0), 1e-10).unwrap();
    assert_relative_eq!(res.argmin, 3.0, epsilon = 1e-7);
    assert!(res.min < 1e-12);
}

#[test]
fn minimizer_handles_log_scaled_unbounded_domain() {
    // min over [1, ∞) of (ln x − 1)² sits at x = e.
    let f = |x: f64| {
        let d = x.ln() - 1.0;
        d * d
    };
    let res = minimize_1d(&f, iv(1.0, f64::INFINITY), 1e-12).unwrap();
    assert_relative_eq!(res.argmin, core::f64::consts::E, max_relative = 1e-6);
}

#[test]
fn integer_search_matches_linear_scan() {
    let n = smallest_integer_satisfying(|n| n * n >= 1000, 1, 1_000_000).unwrap();
    assert_eq!(n, 32);
    let n = smallest_integer_satisfying(|_| true, 5, 100).unwrap();
    assert_eq!(n, 5);
    assert!(smallest_integer_satisfying(|_| false, 1, 1000).is_err());
}

#[test]
fn rng_streams_are_reproducible_and_independent() {
    let draw = |seed, stream| {
        let mut rng = RngStream::new(seed, stream).rng();
        let v: Vec<f64> = (0..8).map(|_| rng.uniform01()).collect();
        v
    };
    assert_eq!(draw(42, 0), draw(42, 0));
    assert_ne!(draw(42, 0), draw(42, 1));
    assert_ne!(draw(42, 0), draw(43, 0));
}

#[test]
fn uniform01_stays_strictly_inside_unit_interval() {
    let mut rng = RngStream::new(7, 3).rng();
    for _ in 0..100_000 {
        let u = rng.uniform01();
        assert!(u > 0.0 && u < 1.0);
    }
}

#[test]
fn standard_normal_moments_are_sane() {
    let mut rng = RngStream::new(11, 0).rng();
    let n = 200_000;
    let (mut s1, mut s2) = (0.0, 0.0);
    for _ in 0..n {
        let z = rng.standard_normal();
        s1 += z;
        s2 += z * z;
    }
    let mean = s1 / n as f64;
    let var = s2 / n as f64 - mean * mean;
    assert!(mean.abs() < 0.01, "mean {mean}");
    assert!((var - 1.0).abs() < 0.02, "var {var}");
}

proptest! {
    #[test]
    fn integer_search_agrees_with_scan(threshold in 1i64..5_000) {
        let found = smallest_integer_satisfying(|n| n >= threshold, 1, 10_000).unwrap();
        prop_assert_eq!(found, threshold.max(1));
    }

    #[test]
    fn minimizer_locates_shifted_quadratics(center in 0.05f64..9.95) {
        let res = minimize_1d_linear(&|x: f64| (x - center) * (x - center), iv(0.0, 10.0), 1e-10).unwrap();
        prop_assert!((res.argmin - center).abs() < 1e-5);
    }

    #[test]
    fn quad_is_linear_in_the_integrand(c in -5.0f64..5.0) {
        let base = adaptive_quad(&|x: f64| x.sin() + 2.0, iv(0.0, 2.0), 1e-12).unwrap();
        let scaled = adaptive_quad(&|x: f64| c * (x.sin() + 2.0), iv(0.0, 2.0), 1e-12).unwrap();
        prop_assert!((scaled - c * base).abs() <= 1e-9 * (1.0 + c.abs()));
    }
}
