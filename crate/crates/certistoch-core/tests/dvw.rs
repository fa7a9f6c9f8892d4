//! Tests for the power-pair prenorm machinery: closed prenorms against the
//! grid supremum, the majorizing characteristic against its defining
//! supremum, series tail bounds, the entropy-integral supremum bound, and
//! the model-reliability condition.

use approx::assert_relative_eq;
use certistoch_core::dvw::{
    dvw_kappa, dvw_model_check, dvw_prenorm, dvw_sup_tail, series_mu, series_tail_bound,
    DvwModel, DvwSpace, TailFamily, ThetaChoice,
};
use proptest::prelude::*;

fn space(a: f64, b: f64) -> DvwSpace {
    DvwSpace::new(a, b).unwrap()
}

#[test]
fn closed_prenorm_reference_values() {
    let sp = space(2.0, 0.4);
    let pareto = TailFamily::Pareto { c: 1.0, scale: 1.0 };
    assert_relative_eq!(
        pareto.closed_prenorm(&sp).unwrap(),
        0.882_408_122_669_066_77,
        max_relative = 1e-12
    );
    let cauchy = TailFamily::Cauchy { gamma: 1.0, scale: 2.0 };
    assert_relative_eq!(
        cauchy.closed_prenorm(&sp).unwrap(),
        1.049_498_986_997_425_9,
        max_relative = 1e-12
    );
    let gauss = TailFamily::Gaussian { sigma: 1.0, scale: 1.0 };
    assert_relative_eq!(
        gauss.closed_prenorm(&space(2.0, 1.0)).unwrap(),
        0.834_061_750_363_404_6,
        max_relative = 1e-12
    );
}

#[test]
fn closed_prenorms_match_the_grid_supremum() {
    // The defining supremum on the log grid reproduces each closed form
    // (the Cauchy family is compared through its linear tail comparison,
    // which is what its closed form bounds).
    let sp = space(2.0, 0.4);
    let pareto = TailFamily::Pareto { c: 1.0, scale: 1.0 };
    let grid = dvw_prenorm(&sp, &|x| pareto.tail(x)).unwrap();
    assert_relative_eq!(grid, pareto.closed_prenorm(&sp).unwrap(), max_relative = 1e-6);

    let cauchy = TailFamily::Cauchy { gamma: 1.0, scale: 2.0 };
    let comparison = |x: f64| (2.0 * 1.0 * 2.0 / (core::f64::consts::PI * x)).min(1.0);
    let grid = dvw_prenorm(&sp, &comparison).unwrap();
    assert_relative_eq!(grid, cauchy.closed_prenorm(&sp).unwrap(), max_relative = 1e-6);

    let sp_g = space(2.0, 1.0);
    let gauss = TailFamily::Gaussian { sigma: 1.0, scale: 1.0 };
    let grid = dvw_prenorm(&sp_g, &|x| gauss.tail(x)).unwrap();
    assert_relative_eq!(grid, gauss.closed_prenorm(&sp_g).unwrap(), max_relative = 1e-6);
}

#[test]
fn pareto_boundary_and_divergence() {
    // ab = c: supremum approached at infinity, value scale^{b/2}.
    let sp = space(2.0, 0.5); // ab = 1 = c
    let pareto = TailFamily::Pareto { c: 1.0, scale: 3.0 };
    assert_relative_eq!(
        pareto.closed_prenorm(&sp).unwrap(),
        3.0f64.powf(0.25),
        max_relative = 1e-12
    );
    // ab > c: outside the space; both the closed form and the grid detector
    // report divergence.
    let sp = space(2.0, 0.8); // ab = 1.6 > 1
    assert!(pareto.closed_prenorm(&sp).is_err());
    assert!(dvw_prenorm(&sp, &|x| pareto.tail(x)).is_err());
}

#[test]
fn prenorm_rejects_invalid_tail_values() {
    let sp = space(1.0, 1.0);
    assert!(dvw_prenorm(&sp, &|_x| 1.5).is_err());
    assert!(dvw_prenorm(&sp, &|_x| f64::NAN).is_err());
}

#[test]
fn kappa_matches_its_defining_supremum() {
    // κ(n) = sup_x (W^{(-1)}(n W(x))/x)^{1/2} with W(x) = x^a; for the power
    // pair the ratio is x-free and equals n^{1/(2a)} exactly.
    for a in [0.5, 1.0, 2.0, 3.5] {
        let sp = space(a, 1.0);
        for n in [1u64, 2, 10, 1000] {
            let kappa = dvw_kappa(&sp, n).unwrap();
            let mut sup: f64 = 0.0;
            for i in 1..=100 {
                let x = i as f64 / 10.0;
                let ratio = ((n as f64) * x.powf(a)).powf(1.0 / a) / x;
                sup = sup.max(ratio.sqrt());
            }
            assert!((kappa - sup).abs() <= 1e-10 * sup.max(1.0));
            assert_relative_eq!(kappa, (n as f64).powf(1.0 / (2.0 * a)), max_relative = 1e-14);
        }
    }
}

#[test]
fn series_mu_geometric_reference() {
    let sp = space(1.0, 1.0); // q = 1
    let prenorms: Vec<f64> = (1..=40).map(|k| 2.0f64.powi(-k)).collect();
    let mu = series_mu(&sp, &prenorms).unwrap();
    // Closed geometric sum Σ_{k=1}^{40} 2^{-k} = 1 − 2^{-40}.
    assert_relative_eq!(mu, 1.0 - 2.0f64.powi(-40), max_relative = 1e-12);
    // Non-decaying long series is flagged.
    let flat = [0.5f64; 20];
    assert!(series_mu(&sp, &flat).is_err());
    // Short lists are summed as-is.
    assert!(series_mu(&sp, &[0.5; 4]).is_ok());
}

#[test]
fn series_tail_reference_value() {
    // a = 2, b = 0.4 (q = 20/9), single prenorm 0.7, level x = 2:
    // bound = x^{-ab} μ^{ab+1} with μ = 0.7^q.
    let sp = space(2.0, 0.4);
    let bound = series_tail_bound(&sp, &[0.7], 2.0).unwrap();
    assert_relative_eq!(bound, 0.137_901_237_517_394_05, max_relative = 1e-12);
    // Below the validity level x >= mu the bound is refused.
    assert!(series_tail_bound(&sp, &[0.7], 0.2).is_err());
}

#[test]
fn sup_tail_bound_reference_value() {
    // a = b = 1 (ab = 1, q = 1), N(eps) = eps^{-1/2}, Δ₀p = 0.3:
    // the entropy integral is ∫_0^{0.3} u^{-1/4} du = 0.3^{3/4}/(3/4).
    let sp = space(1.0, 1.0);
    let entropy = |eps: f64| eps.powf(-0.5);
    let integral = 0.540_480_061_922_813_76;
    let bound = dvw_sup_tail(&sp, 0.0, &entropy, 0.6, 0.5, 10.0).unwrap();
    assert_relative_eq!(bound, integral / (0.5 * 0.5) / 10.0, max_relative = 1e-8);
    // Adding a base prenorm shifts the bound by inf^q/x^{ab}.
    let with_base = dvw_sup_tail(&sp, 0.5, &entropy, 0.6, 0.5, 10.0).unwrap();
    assert_relative_eq!(with_base - bound, 0.05, max_relative = 1e-8);
    // Clipped to 1 at small levels.
    assert_eq!(dvw_sup_tail(&sp, 0.0, &entropy, 0.6, 0.5, 0.1).unwrap(), 1.0);
}

#[test]
fn model_check_shapes() {
    let sp = space(2.0, 1.0); // ab = 2, q = 4/3
    let model = DvwModel {
        // §-style spectral decay: prenorms and Hölder constants both decay.
        prenorms: (1..=30).map(|k| (k as f64).powf(-2.0)).collect(),
        holder_consts: (1..=30).map(|k| (2.0 / (core::f64::consts::PI * k as f64)).sqrt()).collect(),
        zeta: 1.0,
        t_len: 1.0,
        delta_n: 0.01,
        inf_prenorm: 0.0,
    };
    // Optimizing θ never loses to a fixed choice.
    let best = dvw_model_check(&sp, &model, 1.0, 0.5, ThetaChoice::Optimize).unwrap();
    for theta in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let fixed = dvw_model_check(&sp, &model, 1.0, 0.5, ThetaChoice::Fixed(theta)).unwrap();
        assert!(best.lhs <= fixed.lhs * (1.0 + 1e-9));
    }
    // The condition relaxes as the requested accuracy loosens.
    let tight = dvw_model_check(&sp, &model, 0.5, 0.5, ThetaChoice::Fixed(0.5)).unwrap();
    let loose = dvw_model_check(&sp, &model, 2.0, 0.5, ThetaChoice::Fixed(0.5)).unwrap();
    assert!(loose.lhs < tight.lhs);
    // Shape condition ζ > 1/(ab) is enforced.
    let mut bad = model.clone();
    bad.zeta = 0.4; // 1/(ab) = 0.5
    assert!(dvw_model_check(&sp, &bad, 1.0, 0.5, ThetaChoice::Fixed(0.5)).is_err());
}

#[test]
fn degenerate_model_passes_trivially() {
    let sp = space(2.0, 1.0);
    let model = DvwModel {
        prenorms: vec![],
        holder_consts: vec![],
        zeta: 1.0,
        t_len: 1.0,
        delta_n: 0.0,
        inf_prenorm: 0.0,
    };
    let check = dvw_model_check(&sp, &model, 0.01, 0.01, ThetaChoice::Optimize).unwrap();
    assert!(check.pass);
    assert_eq!(check.lhs, 0.0);
}

proptest! {
    #[test]
    fn prenorm_scales_by_lambda_to_the_half_b(lambda in 0.2f64..5.0, b in 0.2f64..0.9) {
        // Scaling the variable by λ scales the tail to P(x/λ) and the
        // prenorm by λ^{b/2}.
        let sp = space(2.0, b);
        let base = TailFamily::Pareto { c: 2.5, scale: 1.0 };
        let scaled = TailFamily::Pareto { c: 2.5, scale: lambda };
        let n_base = base.closed_prenorm(&sp).unwrap();
        let n_scaled = scaled.closed_prenorm(&sp).unwrap();
        prop_assert!((n_scaled - lambda.powf(b / 2.0) * n_base).abs() <= 1e-10 * n_scaled);
    }

    #[test]
    fn series_tail_decreases_in_x(x_off in 0.0f64..20.0) {
        let sp = space(2.0, 0.4);
        let prenorms = [0.5, 0.25, 0.125];
        let mu = series_mu(&sp, &prenorms).unwrap();
        let b1 = series_tail_bound(&sp, &prenorms, mu + x_off).unwrap();
        let b2 = series_tail_bound(&sp, &prenorms, mu + x_off + 1.0).unwrap();
        prop_assert!(b2 <= b1);
        prop_assert!((0.0..=1.0).contains(&b1));
    }

    #[test]
    fn kappa_is_multiplicatively_monotone(a in 0.3f64..4.0, n in 1u64..10_000) {
        let sp = space(a, 1.0);
        let k1 = dvw_kappa(&sp, n).unwrap();
        let k2 = dvw_kappa(&sp, n * 2).unwrap();
        prop_assert!(k2 >= k1);
        prop_assert!(dvw_kappa(&sp, 1).unwrap() == 1.0);
    }
}
