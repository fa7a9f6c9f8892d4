//! Tests for certified Monte Carlo: frozen sample-size reference values,
//! the chunked estimator's determinism, a closed-form Gaussian integral
//! reproduced within its certified accuracy, and monotonicity properties of
//! the sample-size formulas.

use approx::assert_relative_eq;
use certistoch_core::mc::{
    binomial_se, centered_norm, chunk_count, chunk_len, chunk_spec, chunk_sum, run_chunked,
    sample_size_ct, sample_size_lp, sample_size_orlicz, sample_size_psi, OrliczU, CHUNK_SIZE,
};
use certistoch_core::psi::{PsiFamily, PsiVariable};
use proptest::prelude::*;

#[test]
fn frozen_sample_sizes() {
    // Power route: α = ½, ‖ξ‖ = ε = 1, δ = e^{-1} (reliability factor 1):
    // (4·√(3e))² = 48e → 261.
    let v = PsiVariable::new(PsiFamily::Power { alpha: 0.5 }, 1.0).unwrap();
    assert_eq!(sample_size_psi(&v, 1.0, (-1.0f64).exp()).unwrap(), 261);

    // Uniform route: B̂ = 1, α = ½, ε = 1, δ = e^{-1}: (e)² · max(1, 2) ... = 15.
    let fam = PsiFamily::Power { alpha: 0.5 };
    assert_eq!(sample_size_ct(1.0, &fam, 1.0, (-1.0f64).exp()).unwrap(), 15);

    // L_p route: integral = 1, p = 2, α = ½, ε = 1, δ = e^{-1}: (4√6)²·2 = 192.
    assert_eq!(sample_size_lp(1.0, 2.0, &fam, 1.0, (-1.0f64).exp()).unwrap(), 192);
    // p = 1 reduces to the scalar power base (3p)^α = 3^α.
    assert_eq!(sample_size_lp(1.0, 1.0, &fam, 1.0, (-1.0f64).exp()).unwrap(), 96);

    // Orlicz route: L = 1, U(x) = x², δ = 10⁻⁴, ε = 1:
    // U^{-1}(1/δ) = (10⁴)^{1/2} = 100, so n = (1·100/1)² = 10⁴.
    let u = OrliczU::Power { p: 2.0 };
    assert_eq!(sample_size_orlicz(1.0, 1.0, 1e-4, &u).unwrap(), 10_000);
}

#[test]
fn exp_power_route_case_split() {
    // 2aβ = 1 boundary (a = 1, β = ½) and the 2aβ < 1 regime both produce
    // finite sizes; 2aβ > 1 is refused.
    let at_boundary = PsiVariable::new(PsiFamily::ExpPower { a: 1.0, beta: 0.5 }, 1.0).unwrap();
    let below = PsiVariable::new(PsiFamily::ExpPower { a: 0.5, beta: 0.5 }, 1.0).unwrap();
    let above = PsiVariable::new(PsiFamily::ExpPower { a: 2.0, beta: 0.5 }, 1.0).unwrap();
    let n_boundary = sample_size_psi(&at_boundary, 1.0, 0.1).unwrap();
    let n_below = sample_size_psi(&below, 1.0, 0.1).unwrap();
    assert!(n_boundary >= 1 && n_below >= 1);
    assert!(sample_size_psi(&above, 1.0, 0.1).is_err());

    // The boundary base is (4e^{2^{β−1}a}‖ξ‖/ε)²; check the floor-reliability
    // value exactly: factor = max(e^{2(β+1)}, …).
    let base = 4.0 * (2.0f64.powf(-0.5)).exp();
    let arg: f64 = (-(0.9f64.ln()) * 1.0 / 0.5).powf(0.5 / 1.5);
    let factor = (3.0 * arg).exp().max(3.0f64.exp());
    let expected = (base * base * factor).ceil() as u64;
    assert_eq!(sample_size_psi(&at_boundary, 1.0, 0.9).unwrap(), expected);
}

#[test]
fn orlicz_inverse_reference_values() {
    let u = OrliczU::ExpAlpha { alpha: 2.0 };
    // U^{-1}(e - 1) = (ln e)^{1/2} = 1.
    assert_relative_eq!(
        u.inverse(core::f64::consts::E - 1.0).unwrap(),
        1.0,
        max_relative = 1e-14
    );
    assert!(OrliczU::Power { p: 1.0 }.validate().is_err());
    assert!(OrliczU::ExpAlpha { alpha: 3.0 }.validate().is_err());
}

#[test]
fn chunk_layout_partitions_n() {
    for n in [1u64, CHUNK_SIZE - 1, CHUNK_SIZE, CHUNK_SIZE + 1, 3 * CHUNK_SIZE + 17] {
        let total: u64 = chunk_spec(n).map(|(_, len)| len).sum();
        assert_eq!(total, n);
        assert_eq!(chunk_count(n), n.div_ceil(CHUNK_SIZE));
        assert_eq!(chunk_len(n, chunk_count(n)), 0);
    }
}

#[test]
fn chunked_estimator_is_deterministic_and_order_independent() {
    let sampler = |rng: &mut certistoch_core::numeric::rng::StreamRng| rng.standard_normal();
    let n = 2 * CHUNK_SIZE + 123;
    let reference = run_chunked(7, n, &sampler).unwrap();
    assert_eq!(run_chunked(7, n, &sampler).unwrap(), reference);

    // Recompute chunk sums in reverse evaluation order, reduce in chunk
    // order: bit-identical.
    let mut sums: Vec<(u64, f64)> = chunk_spec(n)
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(i, len)| (i, chunk_sum(7, i, len, &sampler).unwrap()))
        .collect();
    sums.sort_by_key(|&(i, _)| i);
    let manual: f64 = sums.iter().map(|&(_, s)| s).sum::<f64>() / n as f64;
    assert_eq!(manual, reference);

    // Different seeds decorrelate.
    assert_ne!(run_chunked(8, n, &sampler).unwrap(), reference);
}

#[test]
fn chunked_estimator_rejects_non_finite_draws() {
    let sampler = |_rng: &mut certistoch_core::numeric::rng::StreamRng| f64::NAN;
    assert!(run_chunked(1, 10, &sampler).is_err());
    assert!(run_chunked(1, 0, &|_r: &mut certistoch_core::numeric::rng::StreamRng| 1.0).is_err());
}

#[test]
fn certified_size_reproduces_a_closed_form_integral() {
    // Gaussian mgf identity: E e^{-ξ/2} = e^{1/8} for ξ ~ N(0,1), so the
    // importance-sampled integral √(2π) E e^{-ξ/2} equals √(2π) e^{1/8}.
    let truth = (2.0 * core::f64::consts::PI).sqrt() * (0.125f64).exp();
    assert_relative_eq!(truth, 2.840_381_951_811_686_1, max_relative = 1e-14);
    let scale = (2.0 * core::f64::consts::PI).sqrt();
    let sampler = move |rng: &mut certistoch_core::numeric::rng::StreamRng| {
        scale * (-rng.standard_normal() / 2.0).exp()
    };
    // Certify (ε, δ) = (0.05, 0.05) through the exp-power route (a Gaussian
    // exponential has an exp-power moment profile; 2aβ = 1 at a = 1, β = ½).
    let v = PsiVariable::new(PsiFamily::ExpPower { a: 1.0, beta: 0.5 }, centered_norm(3.0))
        .unwrap();
    let n = sample_size_psi(&v, 0.05, 0.05).unwrap();
    let estimate = run_chunked(2024, n.min(4_000_000), &sampler).unwrap();
    assert!(
        (estimate - truth).abs() < 0.05,
        "estimate {estimate} off truth {truth} beyond the certified accuracy"
    );
}

#[test]
fn binomial_se_basics() {
    assert_relative_eq!(binomial_se(0.5, 100), 0.05, max_relative = 1e-14);
    assert_eq!(binomial_se(0.0, 10), 0.0);
}

proptest! {
    #[test]
    fn sample_sizes_grow_as_requirements_tighten(
        eps in 0.01f64..1.0,
        delta in 0.001f64..0.5,
        norm in 0.5f64..5.0,
    ) {
        let v = PsiVariable::new(PsiFamily::Power { alpha: 0.5 }, norm).unwrap();
        let n = sample_size_psi(&v, eps, delta).unwrap();
        prop_assert!(sample_size_psi(&v, eps / 2.0, delta).unwrap() >= n);
        prop_assert!(sample_size_psi(&v, eps, delta / 2.0).unwrap() >= n);
        let bigger = PsiVariable::new(PsiFamily::Power { alpha: 0.5 }, norm * 2.0).unwrap();
        prop_assert!(sample_size_psi(&bigger, eps, delta).unwrap() >= n);
    }

    #[test]
    fn orlicz_size_monotone_in_delta(delta in 0.0001f64..0.5) {
        let u = OrliczU::ExpAlpha { alpha: 1.0 };
        let n1 = sample_size_orlicz(1.0, 0.1, delta, &u).unwrap();
        let n2 = sample_size_orlicz(1.0, 0.1, delta / 2.0, &u).unwrap();
        prop_assert!(n2 >= n1);
    }

    #[test]
    fn chunk_lens_cover_everything(n in 1u64..2_000_000) {
        let total: u64 = chunk_spec(n).map(|(_, len)| len).sum();
        prop_assert_eq!(total, n);
        prop_assert!(chunk_spec(n).all(|(_, len)| len <= CHUNK_SIZE && len > 0));
    }
}
