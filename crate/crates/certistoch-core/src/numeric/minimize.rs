use alloc::format;
use alloc::vec::Vec;

use super::Interval1D;
use crate::error::{Error, Result};

/// Result of a 1-D minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinResult {
    /// Abscissa of the best point found.
    pub argmin: f64,
    /// Function value at [`MinResult::argmin`].
    pub min: f64,
}

/// Number of coarse-grid points scanned before refinement.
const COARSE_POINTS: usize = 256;
/// Factor by which an unbounded upper endpoint is capped relative to `lo`.
/// Optimizers of the bound formulas can sit at astronomically large
/// arguments only for accuracies far beyond anything certified here.
const UNBOUNDED_SPAN: f64 = 1e6;

/// Minimizes `f` over `domain` with a log-spaced coarse grid followed by
/// golden-section refinement.
///
/// Intended for the `inf_{u >= 1}` optimizations of the tail-bound calculus,
/// whose objectives are smooth and unimodal on a log scale. The returned
/// `min` is within `tol` of the best value `f` attains near the best coarse
/// grid point; `argmin` always lies in `domain`.
///
/// An unbounded `hi` is capped at `max(lo, 1) * 1e6`. Domains with `lo <= 0`
/// fall back to a uniform grid (see [`minimize_1d_linear`]).
///
/// # Errors
///
/// [`Error::Evaluation`] if `f` returns a non-finite value at any sampled
/// point.
pub fn minimize_1d(
    mut f: impl FnMut(f64) -> f64,
    domain: Interval1D,
    tol: f64,
) -> Result<MinResult> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tol must be positive, got {tol}")));
    }
    let lo = domain.lo;
    let hi = if domain.hi.is_finite() {
        domain.hi
    } else {
        lo.max(1.0) * UNBOUNDED_SPAN
    };
    if lo > 0.0 {
        let (ln_lo, ln_hi) = (libm::log(lo), libm::log(hi));
        let grid = |i: usize| {
            let s = i as f64 / (COARSE_POINTS - 1) as f64;
            libm::exp(ln_lo + s * (ln_hi - ln_lo))
        };
        scan_and_refine(&mut f, lo, hi, grid, tol)
    } else {
        let grid = |i: usize| {
            let s = i as f64 / (COARSE_POINTS - 1) as f64;
            lo + s * (hi - lo)
        };
        scan_and_refine(&mut f, lo, hi, grid, tol)
    }
}

/// Minimizes `f` over a bounded `domain` with a uniform coarse grid followed
/// by golden-section refinement.
///
/// Used for the `inf_{0 < p < 1}` optimizations, where a log grid would
/// oversample one endpoint.
///
/// # Errors
///
/// [`Error::Evaluation`] as in [`minimize_1d`]; [`Error::Domain`] if the
/// domain is unbounded.
pub fn minimize_1d_linear(
    mut f: impl FnMut(f64) -> f64,
    domain: Interval1D,
    tol: f64,
) -> Result<MinResult> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tol must be positive, got {tol}")));
    }
    if domain.is_unbounded() {
        return Err(Error::domain(
            "uniform-grid minimization requires a bounded domain",
        ));
    }
    let (lo, hi) = (domain.lo, domain.hi);
    let grid = |i: usize| {
        let s = i as f64 / (COARSE_POINTS - 1) as f64;
        lo + s * (hi - lo)
    };
    scan_and_refine(&mut f, lo, hi, grid, tol)
}

fn scan_and_refine(
    f: &mut impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    grid: impl Fn(usize) -> f64,
    tol: f64,
) -> Result<MinResult> {
    let mut best_i = 0usize;
    let mut xs: Vec<f64> = Vec::with_capacity(COARSE_POINTS);
    let mut best = f64::INFINITY;
    for i in 0..COARSE_POINTS {
        let x = grid(i);
        let y = eval(f, x)?;
        xs.push(x);
        if y < best {
            best = y;
            best_i = i;
        }
    }
    // Bracket the coarse minimum by its grid neighbours and refine.
    let a = xs[best_i.saturating_sub(1)].max(lo);
    let b = xs[(best_i + 1).min(COARSE_POINTS - 1)].min(hi);
    let refined = golden_section(f, a, b, tol)?;
    if refined.min <= best {
        Ok(refined)
    } else {
        Ok(MinResult {
            argmin: xs[best_i],
            min: best,
        })
    }
}

/// Golden-section search on `[a, b]`; assumes `f` unimodal there.
fn golden_section(
    f: &mut impl FnMut(f64) -> f64,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<MinResult> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(f, c)?;
    let mut fd = eval(f, d)?;
    // Each iteration shrinks the bracket by 1/phi; bail out after enough
    // iterations even if tol is unreachably small in absolute terms.
    for _ in 0..200 {
        if (b - a) <= tol * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(f, c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(f, d)?;
        }
    }
    let (argmin, min) = if fc < fd { (c, fc) } else { (d, fd) };
    Ok(MinResult { argmin, min })
}

fn eval(f: &mut impl FnMut(f64) -> f64, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::Evaluation {
            x,
            what: alloc::string::String::from("objective returned a non-finite value"),
        })
    }
}
