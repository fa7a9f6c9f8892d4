//! Shared numerical plumbing.
//!
//! Everything the certification calculus needs beyond arithmetic lives here:
//!
//! - [`minimize_1d`] — coarse-grid scan plus golden-section refinement, used
//!   for every `inf` over `u >= 1` or `p in (0,1)` in the bound formulas;
//! - [`smallest_integer_satisfying`] — exponential bracketing plus bisection
//!   over a monotone predicate, used for every truncation-level search;
//! - [`adaptive_quad`] — adaptive Gauss–Kronrod quadrature, used for entropy
//!   integrals and as the oracle for closed-form coefficients;
//! - [`special`] — Γ, ln Γ, the upper incomplete Γ(s, x), and the regularized
//!   Gauss hypergeometric function;
//! - [`RngStream`] — reproducible counter-based random streams: the sequence
//!   is a pure function of `(seed, stream_index)`.
//!
//! All operations are pure and re-entrant.

/// Closed/half-open real intervals used as search and integration domains.
pub mod interval;
/// 1-D minimization: coarse scan plus golden-section refinement.
pub mod minimize;
/// Adaptive Gauss–Kronrod quadrature.
pub mod quad;
/// Reproducible counter-based random streams.
pub mod rng;
/// Special functions (Γ, ln Γ, incomplete Γ, regularized ₂F₁).
pub mod special;

pub use interval::Interval1D;
pub use minimize::{minimize_1d, minimize_1d_linear, MinResult};
pub use quad::adaptive_quad;
pub use rng::RngStream;

use crate::error::{Error, Result};

/// Default absolute tolerance on arguments for 1-D optimization.
pub const DEFAULT_OPT_TOL: f64 = 1e-10;
/// Default absolute tolerance for adaptive quadrature.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;
/// Default cap for integer threshold searches.
pub const DEFAULT_INT_CAP: i64 = 100_000_000;

/// Returns the least `n` in `[lo, hi_cap]` with `pred(n) == true`.
///
/// The predicate must be monotone on `[lo, hi_cap]`: once true, it stays
/// true. The search brackets the flip point by doubling the offset from `lo`
/// and then bisects; the result `n` always satisfies `pred(n)` and, when
/// `n > lo`, `!pred(n - 1)`. Light spot checks guard against accidental
/// non-monotone predicates (a true followed by a false raises
/// [`Error::NonMonotone`]).
///
/// # Errors
///
/// [`Error::CapExceeded`] if `pred(hi_cap)` is false, [`Error::NonMonotone`]
/// if a spot check observes `pred` flipping back to false.
pub fn smallest_integer_satisfying(
    mut pred: impl FnMut(i64) -> bool,
    lo: i64,
    hi_cap: i64,
) -> Result<i64> {
    debug_assert!(lo <= hi_cap);
    if pred(lo) {
        // Spot check: a monotone predicate true at `lo` stays true.
        if hi_cap > lo && !pred(hi_cap) {
            return Err(Error::NonMonotone { witness: lo });
        }
        return Ok(lo);
    }

    // Exponential bracketing: find the first power-of-two offset with
    // pred(lo + offset) true.
    let mut step: i64 = 1;
    let mut lo_false = lo; // pred(lo_false) == false
    let hi_true: i64 = loop {
        let candidate = lo.saturating_add(step).min(hi_cap);
        if pred(candidate) {
            break candidate;
        }
        lo_false = candidate;
        if candidate == hi_cap {
            return Err(Error::CapExceeded {
                cap: hi_cap,
                what: alloc::string::String::from("integer threshold search"),
            });
        }
        step = step.saturating_mul(2);
    };

    // Bisection on (lo_false, hi_true].
    let (mut lo_false, mut hi_true) = (lo_false, hi_true);
    while hi_true - lo_false > 1 {
        let mid = lo_false + (hi_true - lo_false) / 2;
        if pred(mid) {
            hi_true = mid;
        } else {
            lo_false = mid;
        }
    }
    Ok(hi_true)
}
