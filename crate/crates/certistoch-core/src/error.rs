//! Error type shared by every module of the crate.

use alloc::string::String;
use core::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors produced by the certification calculus.
///
/// The variants are grouped by how a front end should report them:
/// [`Error::Domain`] and [`Error::Evaluation`] are argument problems,
/// [`Error::Divergence`], [`Error::ValidityThreshold`] and
/// [`Error::ToleranceNotMet`] are mathematical-validity failures, and
/// [`Error::CapExceeded`] means a search hit its configured ceiling.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    Domain {
        /// What was violated, e.g. `"sigma must be positive"`.
        what: String,
    },
    /// A user-supplied function returned a non-finite value.
    Evaluation {
        /// Abscissa at which the evaluation failed.
        x: f64,
        /// Description of the offending quantity.
        what: String,
    },
    /// A series or integral diverges, so no finite bound exists.
    Divergence {
        /// Which quantity diverges and why (names the offending exponent).
        what: String,
    },
    /// A closed-form bound was requested below its validity threshold.
    ValidityThreshold {
        /// The smallest argument at which the bound is valid.
        threshold: f64,
        /// Description of the bound.
        what: String,
    },
    /// An integer search exhausted its cap without satisfying the predicate.
    CapExceeded {
        /// The cap that was reached.
        cap: i64,
        /// Description of the search.
        what: String,
    },
    /// A predicate declared monotone was observed to be non-monotone.
    NonMonotone {
        /// Witness where `pred(n)` is true but `pred(m)` is false for `m > n`.
        witness: i64,
    },
    /// Adaptive quadrature could not reach the requested tolerance.
    ToleranceNotMet {
        /// Best available estimate of the integral.
        estimate: f64,
        /// Error bound attached to `estimate`.
        error_bound: f64,
    },
    /// The operation is not defined for the given family or configuration.
    Unsupported {
        /// What is unsupported, e.g. `"condition H for LogPower"`.
        what: String,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what } => write!(f, "domain error: {what}"),
            Error::Evaluation { x, what } => {
                write!(f, "evaluation error at x = {x}: {what}")
            }
            Error::Divergence { what } => write!(f, "divergence: {what}"),
            Error::ValidityThreshold { threshold, what } => {
                write!(f, "{what}: bound not valid below threshold {threshold}")
            }
            Error::CapExceeded { cap, what } => {
                write!(f, "{what}: not satisfiable below cap {cap}")
            }
            Error::NonMonotone { witness } => {
                write!(f, "predicate is not monotone (witness n = {witness})")
            }
            Error::ToleranceNotMet {
                estimate,
                error_bound,
            } => write!(
                f,
                "quadrature tolerance not met: estimate {estimate} ± {error_bound}"
            ),
            Error::Unsupported { what } => write!(f, "unsupported: {what}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// Shorthand for a [`Error::Domain`] value.
    pub fn domain(what: impl Into<String>) -> Self {
        Error::Domain { what: what.into() }
    }

    /// Shorthand for an [`Error::Unsupported`] value.
    pub fn unsupported(what: impl Into<String>) -> Self {
        Error::Unsupported { what: what.into() }
    }

    /// Shorthand for an [`Error::Divergence`] value.
    pub fn divergence(what: impl Into<String>) -> Self {
        Error::Divergence { what: what.into() }
    }
}
