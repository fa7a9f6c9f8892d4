//! The F_ψ(Ω) calculus: weight families, norms of standard variables, tail
//! bounds, majorizing characteristics κ(n), and condition-H constants C_ψ.
//!
//! A random variable ξ belongs to F_ψ(Ω) when its moment growth is dominated
//! by the weight ψ: `‖ξ‖_ψ = sup_{u≥1} (E|ξ|^u)^{1/u} / ψ(u) < ∞`. Every
//! probability bound in this module follows from Chebyshev's inequality
//! optimized over the moment order `u`, which is why the three supported
//! parametric families (power, exponential-power, logarithmic-power) each
//! come with a closed-form tail bound valid above an explicit threshold and
//! a generic numeric infimum below it.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{minimize_1d, Interval1D, DEFAULT_OPT_TOL};

/// A moment-weight family ψ(u), continuous and strictly increasing on
/// `[1, ∞)` with `ψ(u) → ∞`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PsiFamily {
    /// `ψ(u) = u^α`, `α > 0`. Gaussian-type variables live at `α = ½`,
    /// exponential-type at `α = 1`.
    Power {
        /// Exponent `α > 0`.
        alpha: f64,
    },
    /// `ψ(u) = e^{a u^β}`, `a > 0`, `β > 0`.
    ExpPower {
        /// Scale `a > 0` in the exponent.
        a: f64,
        /// Exponent `β > 0`.
        beta: f64,
    },
    /// `ψ(u) = (ln(u + 1))^λ`, `λ > 0`.
    LogPower {
        /// Exponent `λ > 0`.
        lambda: f64,
    },
    /// A tabulated weight, linearly interpolated between the given
    /// `(u, ψ(u))` points and linearly extrapolated beyond the last one.
    ///
    /// Accepted only by [`norm_from_moments`] and the generic tail infimum;
    /// κ(n) and the condition-H constant need family-specific theorems.
    Tabulated {
        /// Sample points `(u, ψ(u))`, strictly increasing in both entries,
        /// with the first `u` equal to 1.
        points: Vec<(f64, f64)>,
    },
}

impl PsiFamily {
    /// Validates the family parameters.
    pub fn validate(&self) -> Result<()> {
        match self {
            PsiFamily::Power { alpha } if !(*alpha > 0.0) => {
                Err(Error::domain(format!("Power family requires alpha > 0, got {alpha}")))
            }
            PsiFamily::ExpPower { a, beta } if !(*a > 0.0 && *beta > 0.0) => Err(Error::domain(
                format!("ExpPower family requires a > 0 and beta > 0, got a={a}, beta={beta}"),
            )),
            PsiFamily::LogPower { lambda } if !(*lambda > 0.0) => Err(Error::domain(format!(
                "LogPower family requires lambda > 0, got {lambda}"
            ))),
            PsiFamily::Tabulated { points } => {
                let increasing = points.len() >= 2
                    && points.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
                    && points[0].0 == 1.0
                    && points.iter().all(|p| p.1 > 0.0);
                if increasing {
                    Ok(())
                } else {
                    Err(Error::domain(
                        "Tabulated family requires >= 2 strictly increasing positive points starting at u = 1",
                    ))
                }
            }
            _ => Ok(()),
        }
    }

    /// Evaluates ψ(u) for `u >= 1`.
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            PsiFamily::Power { alpha } => libm::pow(u, *alpha),
            PsiFamily::ExpPower { a, beta } => libm::exp(a * libm::pow(u, *beta)),
            PsiFamily::LogPower { lambda } => libm::pow(libm::log(u + 1.0), *lambda),
            PsiFamily::Tabulated { points } => {
                let n = points.len();
                // Find the bracketing segment; extrapolate with the last
                // (or first) slope outside the table.
                let seg = points
                    .windows(2)
                    .position(|w| u <= w[1].0)
                    .unwrap_or(n - 2);
                let (u0, p0) = points[seg];
                let (u1, p1) = points[seg + 1];
                p0 + (p1 - p0) * (u - u0) / (u1 - u0)
            }
        }
    }

    /// Evaluates `ln ψ(u)` for `u >= 1` without overflowing, so Chebyshev
    /// objectives can be optimized on a logarithmic scale.
    pub fn ln_eval(&self, u: f64) -> f64 {
        match self {
            PsiFamily::Power { alpha } => alpha * libm::log(u),
            PsiFamily::ExpPower { a, beta } => a * libm::pow(u, *beta),
            PsiFamily::LogPower { lambda } => lambda * libm::log(libm::log(u + 1.0)),
            PsiFamily::Tabulated { .. } => libm::log(self.eval(u)),
        }
    }
}

/// A random variable's F_ψ membership certificate.
pub struct PsiVariable {
    /// Weight family the variable is certified against.
    pub family: PsiFamily,
    /// The norm `‖ξ‖_ψ` (or a certified upper bound on it).
    pub norm: f64,
    /// Optional analytic moment profile `u ↦ (E|ξ|^u)^{1/u}`, available for
    /// standard distributions and used by consistency checks.
    pub moment_fn: Option<Box<dyn Fn(f64) -> f64 + Send + Sync>>,
}

impl core::fmt::Debug for PsiVariable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("PsiVariable")
            .field("family", &self.family)
            .field("norm", &self.norm)
            .field("moment_fn", &self.moment_fn.as_ref().map(|_| "<fn>"))
            .finish()
    }
}

impl PsiVariable {
    /// A variable with known family and norm, no moment profile.
    pub fn new(family: PsiFamily, norm: f64) -> Result<Self> {
        family.validate()?;
        if !(norm >= 0.0) {
            return Err(Error::domain(format!("norm must be >= 0, got {norm}")));
        }
        Ok(PsiVariable {
            family,
            norm,
            moment_fn: None,
        })
    }
}

/// The condition-H constant of a ψ-space: `‖Σξ_i‖_ψ² ≤ C_ψ Σ‖ξ_i‖_ψ²` for
/// independent centered summands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HConstant {
    /// Family the constant belongs to.
    pub family: PsiFamily,
    /// The constant `C_ψ > 0`.
    pub c_psi: f64,
}

/// Norm certificate for a centered Gaussian with standard deviation `sigma`.
///
/// Family `Power(½)`, norm `2 e^{-5/12} σ ≈ 1.3188 σ`, together with the
/// exact moment profile `u ↦ (2^{u/2} σ^u Γ(u/2 + ½)/√π)^{1/u}`.
pub fn norm_bound_gaussian(sigma: f64) -> Result<PsiVariable> {
    if !(sigma > 0.0) {
        return Err(Error::domain(format!("sigma must be positive, got {sigma}")));
    }
    let norm = 2.0 * libm::exp(-5.0 / 12.0) * sigma;
    let moment = move |u: f64| {
        let ln_moment = 0.5 * u * core::f64::consts::LN_2
            + u * libm::log(sigma)
            + libm::lgamma(0.5 * u + 0.5)
            - 0.5 * libm::log(core::f64::consts::PI);
        libm::exp(ln_moment / u)
    };
    Ok(PsiVariable {
        family: PsiFamily::Power { alpha: 0.5 },
        norm,
        moment_fn: Some(Box::new(moment)),
    })
}

/// Norm certificate for an exponential variable with the given rate.
///
/// Family `Power(1)`, norm `4 √π e^{-1} / rate ≈ 2.6092 / rate`, with the
/// exact moment profile `u ↦ Γ(u + 1)^{1/u} / rate`.
pub fn norm_bound_exponential(rate: f64) -> Result<PsiVariable> {
    if !(rate > 0.0) {
        return Err(Error::domain(format!("rate must be positive, got {rate}")));
    }
    let norm = 4.0 * libm::sqrt(core::f64::consts::PI) * libm::exp(-1.0) / rate;
    let moment = move |u: f64| libm::exp(libm::lgamma(u + 1.0) / u) / rate;
    Ok(PsiVariable {
        family: PsiFamily::Power { alpha: 1.0 },
        norm,
        moment_fn: Some(Box::new(moment)),
    })
}

/// Upper grid limit for the norm sup; beyond this the profiles of interest
/// are decreasing, and the result is documented as a lower estimate anyway.
const NORM_GRID_HI: f64 = 1e4;

/// Grid supremum of `moment_fn(u) / ψ(u)` over `u ∈ [1, 10⁴]`, refined by
/// local maximization around the best grid point.
///
/// A finite grid cannot certify a supremum from above, so the result is a
/// *lower estimate* of the true norm `‖ξ‖_ψ`; certification paths use the
/// analytic norms ([`norm_bound_gaussian`] / [`norm_bound_exponential`])
/// instead.
///
/// # Errors
///
/// [`Error::Evaluation`] naming the offending `u` if the moment profile is
/// non-finite anywhere on the grid.
pub fn norm_from_moments(
    moment_fn: impl Fn(f64) -> f64,
    family: &PsiFamily,
) -> Result<f64> {
    family.validate()?;
    let objective = |u: f64| -> f64 { -moment_fn(u) / family.eval(u) };
    // minimize the negative ratio == maximize the ratio
    let res = minimize_1d(
        objective,
        Interval1D::new(1.0, NORM_GRID_HI)?,
        DEFAULT_OPT_TOL,
    )
    .map_err(|e| match e {
        Error::Evaluation { x, .. } => Error::Evaluation {
            x,
            what: format!("moment profile non-finite at u = {x}"),
        },
        other => other,
    })?;
    Ok(-res.min)
}

/// Tail bound `P{|ξ| > eps}` for a certified variable.
///
/// Uses the family's closed form when `eps` clears its validity threshold:
///
/// - Power(α), `eps ≥ e^α ‖ξ‖`: `exp{-(α/e)(eps/‖ξ‖)^{1/α}}`;
/// - ExpPower(a, β), `eps ≥ e^{a(β+1)} ‖ξ‖`:
///   `exp{-(β/a^{1/β}) (ln(eps/‖ξ‖)/(β+1))^{(β+1)/β}}`;
/// - LogPower(λ), `eps ≥ (e ln 2)^λ ‖ξ‖`:
///   `e^λ exp{-λ exp{(eps/‖ξ‖)^{1/λ}/e}}`.
///
/// Below the threshold (and always for tabulated families) it falls back to
/// the generic Chebyshev infimum `inf_{u≥1} (‖ξ‖ ψ(u)/eps)^u`, which is
/// valid unconditionally. The result is clipped to `[0, 1]`.
pub fn tail_bound(v: &PsiVariable, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::domain(format!("eps must be positive, got {eps}")));
    }
    if !(v.norm > 0.0) {
        return Err(Error::domain(format!(
            "tail_bound requires a positive norm, got {}",
            v.norm
        )));
    }
    let r = eps / v.norm;
    let closed = match &v.family {
        PsiFamily::Power { alpha } if r >= libm::exp(*alpha) => {
            Some(libm::exp(-(alpha / core::f64::consts::E) * libm::pow(r, 1.0 / alpha)))
        }
        PsiFamily::ExpPower { a, beta } if r >= libm::exp(a * (beta + 1.0)) => {
            let inner = libm::log(r) / (beta + 1.0);
            Some(libm::exp(
                -(beta / libm::pow(*a, 1.0 / beta)) * libm::pow(inner, (beta + 1.0) / beta),
            ))
        }
        PsiFamily::LogPower { lambda }
            if r >= libm::pow(core::f64::consts::E * core::f64::consts::LN_2, *lambda) =>
        {
            Some(libm::exp(*lambda) * libm::exp(-lambda * libm::exp(libm::pow(r, 1.0 / lambda) / core::f64::consts::E)))
        }
        _ => None,
    };
    let bound = match closed {
        Some(b) => b,
        None => tail_bound_generic(&v.family, v.norm, eps)?,
    };
    Ok(bound.clamp(0.0, 1.0))
}

/// The generic Chebyshev tail infimum `inf_{u ≥ 1} (‖ξ‖ ψ(u)/eps)^u`,
/// clipped to `[0, 1]`.
///
/// Valid for every family and every `eps > 0`; used directly by tests as the
/// oracle for the closed forms, and as the fallback below their thresholds.
pub fn tail_bound_generic(family: &PsiFamily, norm: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && norm > 0.0) {
        return Err(Error::domain(format!(
            "generic tail bound requires eps > 0 and norm > 0, got eps={eps}, norm={norm}"
        )));
    }
    family.validate()?;
    // Work on the logarithmic objective u ln(norm·ψ(u)/eps) so huge u cannot
    // overflow the power.
    let objective =
        |u: f64| u * (libm::log(norm) + family.ln_eval(u) - libm::log(eps));
    let res = minimize_1d(
        objective,
        Interval1D::new(1.0, f64::INFINITY)?,
        DEFAULT_OPT_TOL,
    )?;
    Ok(libm::exp(res.min).clamp(0.0, 1.0))
}

/// Majorizing characteristic κ(n) at a (real) argument.
///
/// Extends the integer κ(n) continuously so entropy integrals can compose it
/// with real-valued massiveness majorants; clipped from below at 1 so that
/// κ(1) = 1 exactly and κ stays nondecreasing.
pub fn kappa_real(family: &PsiFamily, n: f64) -> Result<f64> {
    family.validate()?;
    if !(n >= 1.0) {
        return Err(Error::domain(format!("kappa requires n >= 1, got {n}")));
    }
    if n == 1.0 {
        return Ok(1.0);
    }
    let value = match family {
        PsiFamily::Power { alpha } => {
            libm::pow(core::f64::consts::E / alpha, *alpha) * libm::pow(libm::log(n), *alpha)
        }
        PsiFamily::ExpPower { a, beta } => {
            // S(a,β) = (βa)^{1/(β+1)} (β^{-1} + 1)
            let s = libm::pow(beta * a, 1.0 / (beta + 1.0)) * (1.0 / beta + 1.0);
            libm::exp(-a) * libm::exp(s * libm::pow(libm::log(n), beta / (beta + 1.0)))
        }
        PsiFamily::LogPower { lambda } => {
            core::f64::consts::E
                * libm::pow(libm::log(libm::log(n) + 2.0) / core::f64::consts::LN_2, *lambda)
        }
        PsiFamily::Tabulated { .. } => {
            return Err(Error::unsupported(
                "kappa needs a parametric family (Power, ExpPower or LogPower)",
            ))
        }
    };
    Ok(value.max(1.0))
}

/// Majorizing characteristic κ(n) for integer `n ≥ 1`, with κ(1) = 1.
pub fn kappa(family: &PsiFamily, n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("kappa requires n >= 1"));
    }
    kappa_real(family, n as f64)
}

/// The condition-H constant C_ψ of the family's space.
///
/// - Power(α), `α ≥ ½`: `C_ψ = 4·9^α` (for `α < ½` condition H fails);
/// - ExpPower(a, β), `0 < β < 1`: `4 e^{2^β a}` when `(2aβ)^{-1/β} = 1`, and
///   `4 e^{a(2^β+1) - 1/(2β)} / (2aβ)^{1/(2β)}` when `(2aβ)^{-1/β} > 1`;
/// - LogPower: no constant is available.
pub fn condition_h_constant(family: &PsiFamily) -> Result<HConstant> {
    family.validate()?;
    let c_psi = match family {
        PsiFamily::Power { alpha } => {
            if *alpha < 0.5 {
                return Err(Error::unsupported(format!(
                    "condition H not available for Power(alpha = {alpha}): requires alpha >= 1/2"
                )));
            }
            4.0 * libm::pow(9.0, *alpha)
        }
        PsiFamily::ExpPower { a, beta } => {
            if !(*beta < 1.0) {
                return Err(Error::unsupported(format!(
                    "condition H constant for ExpPower requires 0 < beta < 1, got beta = {beta}"
                )));
            }
            let two_a_beta = 2.0 * a * beta;
            if libm::fabs(two_a_beta - 1.0) < 1e-12 {
                // (2aβ)^{-1/β} = 1
                4.0 * libm::exp(libm::pow(2.0, *beta) * a)
            } else if two_a_beta < 1.0 {
                // (2aβ)^{-1/β} > 1
                4.0 * libm::exp(a * (libm::pow(2.0, *beta) + 1.0) - 1.0 / (2.0 * beta))
                    / libm::pow(two_a_beta, 1.0 / (2.0 * beta))
            } else {
                return Err(Error::unsupported(format!(
                    "condition H constant for ExpPower requires (2aβ)^(-1/β) >= 1, got 2aβ = {two_a_beta} > 1"
                )));
            }
        }
        PsiFamily::LogPower { .. } => {
            return Err(Error::unsupported("condition H constant for LogPower"))
        }
        PsiFamily::Tabulated { .. } => {
            return Err(Error::unsupported("condition H constant for tabulated families"))
        }
    };
    Ok(HConstant {
        family: family.clone(),
        c_psi,
    })
}
