//! Tests for the sub-φ calculus: frozen reference values for the uniform
//! tail bound and the generating-function factors, brute-force series and
//! quadrature oracles for every basis family, the telescoping Hermite tail,
//! and the twin L_p admissibility criteria.

use approx::assert_relative_eq;
use certistoch_core::numeric::special::ln_gamma;
use certistoch_core::numeric::{adaptive_quad, Interval1D};
use certistoch_core::subgauss::{
    basis_remainder, basis_remainder_at, chebyshev_t_shape, cosine_tail_factor,
    ct_modulus_budget, ct_tail_bound, ct_validity_threshold, hermite_tail_factor, lp_criteria,
    tau_combine, tau_hat, whole_process_factor, BasisRemainder, GeometricBasis, PhiFunction,
    TauBudget, HERMITE_K,
};
use core::f64::consts::PI;
use proptest::prelude::*;

#[test]
fn tau_combine_reference_cases() {
    // s = 1 is a plain sum, s = 2 the Euclidean norm.
    assert_relative_eq!(tau_combine(1.0, &[1.0, 2.0, 3.0]).unwrap(), 6.0);
    assert_relative_eq!(tau_combine(2.0, &[3.0, 4.0]).unwrap(), 5.0);
    assert!(tau_combine(0.0, &[1.0]).is_err());
    assert!(tau_combine(2.5, &[1.0]).is_err());
    assert!(tau_combine(1.0, &[-1.0]).is_err());
}

#[test]
fn lp_criteria_reference_case() {
    // γ = 2 (so β = 2), p = 2, δ = 1, α = 2e^{-2}: ln(2/α) = 2, so the
    // reliability ceiling is 1/(2·2)^{2/2} = 1/4 and the shape ceiling
    // 1/2^{2·(1/2)} = 1/2.
    let phi = PhiFunction::PurePower { gamma: 2.0 };
    let alpha_rel = 2.0 * (-2.0f64).exp();
    let crit = lp_criteria(&TauBudget { c_n: 0.2, p: 2.0 }, &phi, 1.0, alpha_rel).unwrap();
    assert_relative_eq!(crit.reliability_limit, 0.25, max_relative = 1e-14);
    assert_relative_eq!(crit.shape_limit, 0.5, max_relative = 1e-14);
    assert!(crit.pass);
    let crit = lp_criteria(&TauBudget { c_n: 0.3, p: 2.0 }, &phi, 1.0, alpha_rel).unwrap();
    assert!(!crit.pass);
}

#[test]
fn uniform_tail_bound_reference_values() {
    // C = 1, æ = 1, ζ = 2, γ_N = 0.1 on [0, 1].
    assert_relative_eq!(
        ct_validity_threshold(1.0, 1.0, 2.0, 0.1, 1.0).unwrap(),
        2.193_928_222_277_359_7,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        ct_tail_bound(1.0, 1.0, 2.0, 0.1, 1.0, 2.5).unwrap(),
        4.164_809_104_915_286e-63,
        max_relative = 1e-10
    );
    assert_relative_eq!(
        ct_tail_bound(1.0, 1.0, 2.0, 0.1, 1.0, 3.0).unwrap(),
        1.141_456_225_562_865_5e-100,
        max_relative = 1e-10
    );
    // Below the threshold the bound is refused, not silently extrapolated.
    assert!(ct_tail_bound(1.0, 1.0, 2.0, 0.1, 1.0, 2.0).is_err());
    assert_relative_eq!(ct_modulus_budget(1.0, 1.0, 1.0), 0.5);
}

#[test]
fn whole_process_factor_reference_values() {
    let cases: [(GeometricBasis, f64); 6] = [
        (GeometricBasis::HermiteGeometric, 1.154_700_538_379_251_5),
        (GeometricBasis::ChebyshevT, 1.077_575_287_957_491_6),
        (GeometricBasis::ChebyshevU, 1.504_505_556_127_350_1),
        (GeometricBasis::Legendre, 1.482_303_807_367_511_1),
        (GeometricBasis::Laguerre { alpha: 0.5 }, 1.168_090_583_214_896_9),
        (GeometricBasis::Gegenbauer { alpha: 1.5 }, 1.499_073_002_594_678_5),
    ];
    for (basis, expected) in cases {
        let f = whole_process_factor(&basis, 1.0, 0.5).unwrap();
        assert_relative_eq!(f, expected, max_relative = 1e-12);
    }
}

#[test]
fn chebyshev_t_shape_reference_values() {
    for (w, expected) in [(0.1, 1.993_319_9), (0.5, 1.823_959_2), (0.9, 1.310_801_9)] {
        assert_relative_eq!(chebyshev_t_shape(w), expected, max_relative = 1e-7);
    }
}

#[test]
fn generating_function_factors_match_quadrature() {
    // The squared Chebyshev/Legendre factors are (up to the π-normalization)
    // integrals of squared generating functions over λ ∈ [-1, 1].
    for w in [0.1, 0.5, 0.9] {
        let dom = Interval1D::new(-1.0, 1.0).unwrap();

        let gf_t = move |lam: f64| {
            let g = (1.0 - w * lam) / (1.0 - 2.0 * w * lam + w * w);
            g * g
        };
        let quad_t = adaptive_quad(gf_t, dom, 1e-12).unwrap();
        let f = whole_process_factor(&GeometricBasis::ChebyshevT, 1.0, w).unwrap();
        assert_relative_eq!(f * f, 2.0 / PI * quad_t, max_relative = 1e-8);

        let gf_u = move |lam: f64| {
            let d = 1.0 - 2.0 * w * lam + w * w;
            1.0 / (d * d)
        };
        let quad_u = adaptive_quad(gf_u, dom, 1e-12).unwrap();
        let f = whole_process_factor(&GeometricBasis::ChebyshevU, 1.0, w).unwrap();
        assert_relative_eq!(f * f, 4.0 / PI * quad_u / 2.0, max_relative = 1e-8);

        let gf_p = move |lam: f64| 1.0 / (1.0 - 2.0 * w * lam + w * w);
        let quad_p = adaptive_quad(gf_p, dom, 1e-12).unwrap();
        let f = whole_process_factor(&GeometricBasis::Legendre, 1.0, w).unwrap();
        assert_relative_eq!(f * f, quad_p, max_relative = 1e-8);
    }
}

#[test]
fn generating_function_factors_match_brute_series() {
    // The squared Hermite/Laguerre/Gegenbauer factors equal the
    // orthonormality series Σ_k s_k w^{2k} with family-specific weights.
    for w in [0.1f64, 0.5, 0.9] {
        let w2 = w * w;

        // Hermite-geometric: s_k = 1, i.e. the plain geometric series.
        let brute: f64 = (0..5000).map(|k| w2.powi(k)).sum();
        let f = whole_process_factor(&GeometricBasis::HermiteGeometric, 1.0, w).unwrap();
        assert_relative_eq!(f * f, brute, max_relative = 1e-8);

        // Laguerre(α): s_k = Γ(k+α+1)/k!.
        let alpha = 0.5;
        let brute: f64 = (0..5000)
            .map(|k| {
                let kf = k as f64;
                (ln_gamma(kf + alpha + 1.0).unwrap() - ln_gamma(kf + 1.0).unwrap()
                    + 2.0 * kf * w.ln())
                .exp()
            })
            .sum();
        let f = whole_process_factor(&GeometricBasis::Laguerre { alpha }, 1.0, w).unwrap();
        assert_relative_eq!(f * f, brute, max_relative = 1e-8);

        // Gegenbauer(α): s_k = Γ(k+2α)/(k!(k+α)).
        let alpha = 1.5;
        let brute: f64 = (0..5000)
            .map(|k| {
                let kf = k as f64;
                (ln_gamma(kf + 2.0 * alpha).unwrap()
                    - ln_gamma(kf + 1.0).unwrap()
                    - (kf + alpha).ln()
                    + 2.0 * kf * w.ln())
                .exp()
            })
            .sum();
        let f = whole_process_factor(&GeometricBasis::Gegenbauer { alpha }, 1.0, w).unwrap();
        assert_relative_eq!(f * f, brute, max_relative = 1e-8);
    }
}

#[test]
fn gegenbauer_at_half_reduces_to_legendre() {
    for w in [0.2, 0.5, 0.8] {
        let g = whole_process_factor(&GeometricBasis::Gegenbauer { alpha: 0.5 }, 1.0, w).unwrap();
        let l = whole_process_factor(&GeometricBasis::Legendre, 1.0, w).unwrap();
        assert_relative_eq!(g, l, max_relative = 1e-10);
    }
}

#[test]
fn laguerre_factor_collapses_at_small_decay() {
    // As w → 0 only the k = 0 term survives, so the squared factor tends to
    // Γ(α+1)·τ².
    let alpha = 0.7;
    let f = whole_process_factor(&GeometricBasis::Laguerre { alpha }, 1.0, 1e-9).unwrap();
    let expected =
        certistoch_core::numeric::special::gamma(alpha + 1.0).unwrap();
    assert_relative_eq!(f * f, expected, max_relative = 1e-12);
}

#[test]
fn hermite_tail_is_telescoping_exact() {
    for n in [1usize, 10, 100] {
        let brute: f64 = ((n + 1)..2_000_000)
            .map(|k| {
                let k = k as f64;
                1.0 / (k * k + 3.0 * k + 2.0)
            })
            .sum();
        let closed = hermite_tail_factor(1.0, n).unwrap();
        // The brute sum misses the (tiny) tail beyond 2·10⁶ terms.
        assert!((closed - brute).abs() < 1e-6);
        assert_relative_eq!(closed, 1.0 / (n as f64 + 2.0), max_relative = 1e-14);
    }
}

#[test]
fn cosine_tail_dominates_brute_sum() {
    for n in [1usize, 10, 100] {
        let brute: f64 = ((n + 1)..1_000_000)
            .map(|k| {
                let k = k as f64;
                4.0 / (PI * PI * k * k)
            })
            .sum();
        let closed = cosine_tail_factor(1.0, n).unwrap();
        assert!(closed >= brute, "cosine tail {closed} below brute {brute} at N={n}");
    }
}

#[test]
fn tau_hat_first_terms() {
    // k = 0 reduces to the family scale; geometric decay enters at k >= 1.
    let tau = 2.0;
    let w = 0.3;
    assert_relative_eq!(
        tau_hat(&GeometricBasis::ChebyshevT, tau, w, 3).unwrap(),
        tau * w.powi(3)
    );
    assert_relative_eq!(
        tau_hat(&GeometricBasis::Legendre, tau, w, 0).unwrap(),
        (2.0f64).sqrt() * tau
    );
    assert_relative_eq!(
        tau_hat(&GeometricBasis::Laguerre { alpha: 0.5 }, tau, w, 0).unwrap(),
        certistoch_core::numeric::special::gamma(1.5).unwrap().sqrt() * tau,
        max_relative = 1e-12
    );
}

#[test]
fn geometric_remainder_reduces_over_the_grid() {
    // With a constant kernel norm and zero model coefficients the bound is
    // the whole-process factor itself, uniformly in t.
    let f_l2 = |_t: f64| 2.0;
    let a_hat = |_k: usize, _t: f64| 0.0;
    let bound = BasisRemainder::Geometric {
        basis: GeometricBasis::ChebyshevT,
        tau: 1.0,
        w: 0.5,
        n: 4,
        f_l2: &f_l2,
        a_hat: &a_hat,
    };
    let report = basis_remainder(&bound, Interval1D::new(0.0, 1.0).unwrap()).unwrap();
    let factor = whole_process_factor(&GeometricBasis::ChebyshevT, 1.0, 0.5).unwrap();
    assert_relative_eq!(report.sup_value, 2.0 * factor, max_relative = 1e-12);
    assert_relative_eq!(report.closed_factor.unwrap(), factor);
    assert_eq!(report.terms.len(), 5);
    // Modeled terms reduce the bound pointwise.
    let a_hat_pos = |k: usize, _t: f64| if k == 0 { 0.5 } else { 0.0 };
    let tighter = BasisRemainder::Geometric {
        basis: GeometricBasis::ChebyshevT,
        tau: 1.0,
        w: 0.5,
        n: 4,
        f_l2: &f_l2,
        a_hat: &a_hat_pos,
    };
    assert!(
        basis_remainder_at(&tighter, 0.3).unwrap() < basis_remainder_at(&bound, 0.3).unwrap()
    );
}

#[test]
fn cosine_and_hermite_remainders_combine_tail_and_terms() {
    let delta_f = |t: f64| t;
    let delta_k = |_k: usize, _t: f64| 0.0;
    let taus = [1.0, 1.0, 1.0];
    let bound = BasisRemainder::Cosine {
        taus: &taus,
        tau_tail: 1.0,
        delta_f: &delta_f,
        delta_k: &delta_k,
    };
    // With exact modeled coefficients only the tail survives:
    // √(δ_f²(t) · 4/(π²N)).
    let v = basis_remainder_at(&bound, 0.5).unwrap();
    assert_relative_eq!(
        v,
        (0.25 * cosine_tail_factor(1.0, 3).unwrap()).sqrt(),
        max_relative = 1e-12
    );
    let report = basis_remainder(&bound, Interval1D::new(0.0, 1.0).unwrap()).unwrap();
    assert_relative_eq!(report.argmax_t, 1.0); // δ_f grows in t
    assert_eq!(report.terms.len(), 3);

    let hermite = BasisRemainder::Hermite {
        taus: &taus,
        tau_tail: 1.0,
        z_f_sq_integral: 2.0,
        delta_k: &delta_k,
    };
    let v = basis_remainder_at(&hermite, 0.0).unwrap();
    let expected = (HERMITE_K * HERMITE_K * 2.0 * hermite_tail_factor(1.0, 2).unwrap()).sqrt();
    assert_relative_eq!(v, expected, max_relative = 1e-12);
}

proptest! {
    #[test]
    fn tau_combine_nonincreasing_in_s(s in 0.2f64..1.9, t1 in 0.1f64..5.0, t2 in 0.1f64..5.0) {
        // (Σ τ^s)^{1/s} shrinks as s grows.
        let lo = tau_combine(s, &[t1, t2]).unwrap();
        let hi = tau_combine(s + 0.1, &[t1, t2]).unwrap();
        prop_assert!(hi <= lo * (1.0 + 1e-12));
    }

    #[test]
    fn ct_bound_is_decreasing_past_threshold(x_off in 0.1f64..5.0) {
        let t = ct_validity_threshold(1.0, 1.0, 2.0, 0.1, 1.0).unwrap();
        let b1 = ct_tail_bound(1.0, 1.0, 2.0, 0.1, 1.0, t + x_off).unwrap();
        let b2 = ct_tail_bound(1.0, 1.0, 2.0, 0.1, 1.0, t + x_off + 0.1).unwrap();
        prop_assert!(b2 <= b1);
        prop_assert!((0.0..=1.0).contains(&b1));
    }

    #[test]
    fn factors_increase_with_decay_ratio(w in 0.05f64..0.85) {
        for basis in [
            GeometricBasis::HermiteGeometric,
            GeometricBasis::ChebyshevU,
            GeometricBasis::Legendre,
            GeometricBasis::Laguerre { alpha: 0.5 },
            GeometricBasis::Gegenbauer { alpha: 1.5 },
        ] {
            let f1 = whole_process_factor(&basis, 1.0, w).unwrap();
            let f2 = whole_process_factor(&basis, 1.0, w + 0.1).unwrap();
            prop_assert!(f2 >= f1, "{basis:?} factor fell from {f1} to {f2} at w={w}");
        }
    }
}
