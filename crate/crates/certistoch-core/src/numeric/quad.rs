use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use super::Interval1D;
use crate::error::{Error, Result};

/// 15-point Kronrod abscissae on `[-1, 1]` (non-negative half).
const XK: [f64; 8] = [
    0.000000000000000,
    0.207784955007898,
    0.405845151377397,
    0.586087235467691,
    0.741531185599394,
    0.864864423359769,
    0.949107912342759,
    0.991455371120813,
];

/// Kronrod weights paired with [`XK`].
const WK: [f64; 8] = [
    0.209482141084728,
    0.204432940075298,
    0.190350578064785,
    0.169004726639267,
    0.140653259715525,
    0.104790010322250,
    0.063092092629979,
    0.022935322010529,
];

/// Gauss weights for the embedded 7-point rule (nodes `XK[0], XK[2], XK[4],
/// XK[6]`).
const WG: [f64; 4] = [
    0.417959183673469,
    0.381830050505119,
    0.279705391489277,
    0.129484966168870,
];

/// Hard cap on the number of subintervals before giving up.
const MAX_INTERVALS: usize = 20_000;

struct Segment {
    a: f64,
    b: f64,
    integral: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates `f` over `domain` to absolute tolerance `abs_tol` with
/// adaptive Gauss–Kronrod (7–15) bisection.
///
/// Unbounded domains (`hi = +∞`) are mapped to `[0, 1)` by
/// `x = lo + t/(1-t)` before integration. The worst subinterval (by the
/// Kronrod error estimate) is split until the summed error estimate falls
/// below `abs_tol`. Integrands need only be piecewise smooth; endpoint
/// singularities that remain integrable are handled because the rule never
/// evaluates at endpoints.
///
/// # Errors
///
/// [`Error::Evaluation`] if `f` is non-finite at a quadrature node;
/// [`Error::ToleranceNotMet`] (carrying the best estimate and its error
/// bound) if the subdivision cap is hit first.
pub fn adaptive_quad(
    mut f: impl FnMut(f64) -> f64,
    domain: Interval1D,
    abs_tol: f64,
) -> Result<f64> {
    if !(abs_tol > 0.0) {
        return Err(Error::domain(alloc::format!(
            "abs_tol must be positive, got {abs_tol}"
        )));
    }
    if domain.is_unbounded() {
        let lo = domain.lo;
        let mapped = move |t: f64| {
            let om = 1.0 - t;
            f(lo + t / om) / (om * om)
        };
        return adaptive_core(mapped, 0.0, 1.0, abs_tol);
    }
    adaptive_core(f, domain.lo, domain.hi, abs_tol)
}

fn adaptive_core(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
) -> Result<f64> {
    let mut heap: BinaryHeap<Segment> = BinaryHeap::new();
    heap.push(gk15(&mut f, a, b)?);
    let mut total_error: f64 = heap.peek().map(|s| s.error).unwrap_or(0.0);

    while total_error > abs_tol {
        if heap.len() >= MAX_INTERVALS {
            let estimate = heap.iter().map(|s| s.integral).sum();
            return Err(Error::ToleranceNotMet {
                estimate,
                error_bound: total_error,
            });
        }
        // The heap is never empty here: total_error > 0 implies a segment.
        let worst = heap.pop().expect("non-empty quadrature heap");
        total_error -= worst.error;
        let mid = 0.5 * (worst.a + worst.b);
        // A segment collapsed to machine precision cannot be split further;
        // accept its estimate as converged.
        if mid <= worst.a || mid >= worst.b {
            let estimate: f64 =
                worst.integral + heap.iter().map(|s| s.integral).sum::<f64>();
            return Ok(estimate);
        }
        let left = gk15(&mut f, worst.a, mid)?;
        let right = gk15(&mut f, mid, worst.b)?;
        total_error += left.error + right.error;
        heap.push(left);
        heap.push(right);
    }

    // Sum small-to-large for a little extra accuracy.
    let mut parts: alloc::vec::Vec<f64> = heap.iter().map(|s| s.integral).collect();
    parts.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
    Ok(parts.iter().sum())
}

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> Result<Segment> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Evaluation {
                x,
                what: alloc::string::String::from("integrand returned a non-finite value"),
            })
        }
    };

    let f0 = eval(mid)?;
    let mut kronrod = WK[0] * f0;
    let mut gauss = WG[0] * f0;
    for i in 1..8 {
        let dx = half * XK[i];
        let fsum = eval(mid - dx)? + eval(mid + dx)?;
        kronrod += WK[i] * fsum;
        if i % 2 == 0 {
            gauss += WG[i / 2] * fsum;
        }
    }
    kronrod *= half;
    gauss *= half;

    // Standard scaled error estimate for the (7,15) pair.
    let diff = (kronrod - gauss).abs();
    let error = if diff == 0.0 {
        0.0
    } else {
        let scaled = libm::pow(200.0 * diff, 1.5);
        diff.min(scaled)
    };
    Ok(Segment {
        a,
        b,
        integral: kronrod,
        error,
    })
}
