use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A one-dimensional search or integration domain `[lo, hi]`.
///
/// `hi` may be `f64::INFINITY` for tail searches and improper integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval1D {
    /// Lower endpoint (finite).
    pub lo: f64,
    /// Upper endpoint; may be `+∞`.
    pub hi: f64,
}

impl Interval1D {
    /// Builds an interval, enforcing `lo < hi` and a finite `lo`.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !(lo < hi) {
            return Err(Error::domain(alloc::format!(
                "interval requires finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Interval1D { lo, hi })
    }

    /// Width `hi - lo`; `+∞` for unbounded intervals.
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Whether the upper endpoint is infinite.
    pub fn is_unbounded(&self) -> bool {
        self.hi.is_infinite()
    }
}
