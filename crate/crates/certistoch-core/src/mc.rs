//! Certified Monte-Carlo integration.
//!
//! Given an accuracy ε and a reliability 1 − δ, the functions here compute
//! a sample size n *before* any sampling such that the empirical mean
//! `Z_n = (1/n) Σ f(ξ_i)` satisfies `P{|Z_n − I| > ε} ≤ δ`.  Two routes are
//! provided:
//!
//! * the Orlicz route ([`sample_size_orlicz`]): `n ≥ (L·U^{(−1)}(1/δ)/ε)²`
//!   for a norming Orlicz function U with a closed-form inverse;
//! * the moment-growth route ([`sample_size_psi`], [`sample_size_ct`],
//!   [`sample_size_lp`]): sample sizes scaling with `ln(1/δ)` instead of
//!   `1/δ`, derived from the exponential-type tail bounds of the ψ-norm
//!   calculus in [`crate::psi`].
//!
//! Centering: all ψ-route formulas consume the norm of the *centered* draw
//! `ξ − I`; since I is unknown, we always bound it by `2‖ξ‖` (triangle
//! inequality plus `‖E ξ‖ ≤ ‖ξ‖`) — see [`centered_norm`].  The factor 4 in
//! the formulas below is `2 (centering) × 2` from the symmetric two-sided
//! tail.
//!
//! Estimation itself is deterministic and chunked: draws are partitioned
//! into fixed chunks of [`CHUNK_SIZE`], chunk i is driven by the dedicated
//! stream `RngStream::new(seed, i)`, and chunk sums are combined in chunk
//! order.  The result is therefore bit-identical no matter how many workers
//! evaluate the chunks; [`chunk_spec`] and [`chunk_sum`] expose the pieces
//! a parallel driver needs.

use libm::{ceil, exp, log, pow, sqrt};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::rng::RngStream;
use crate::psi::{PsiFamily, PsiVariable};

/// Number of draws per deterministic chunk (2^16).
pub const CHUNK_SIZE: u64 = 1 << 16;

const E: f64 = core::f64::consts::E;

/// Norming Orlicz functions U with closed-form inverses, used by the
/// Orlicz-route sample-size formula.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OrliczU {
    /// `U(x) = x^p`, `p ≥ 2`; `U^{(−1)}(y) = y^{1/p}`.
    Power {
        /// Power exponent p.
        p: f64,
    },
    /// `U(x) = e^{x^α} − 1`, `α ∈ [1,2]`; `U^{(−1)}(y) = (ln(1+y))^{1/α}`.
    ExpAlpha {
        /// Exponential order α.
        alpha: f64,
    },
}

impl OrliczU {
    /// Checks the parameter range of the variant.
    pub fn validate(&self) -> Result<()> {
        match *self {
            OrliczU::Power { p } => {
                if !(p >= 2.0) || !p.is_finite() {
                    return Err(Error::domain("Orlicz power family requires p >= 2"));
                }
            }
            OrliczU::ExpAlpha { alpha } => {
                if !(alpha >= 1.0 && alpha <= 2.0) {
                    return Err(Error::domain("Orlicz exp family requires alpha in [1, 2]"));
                }
            }
        }
        Ok(())
    }

    /// Closed-form inverse `U^{(−1)}(y)` for `y > 0`.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        self.validate()?;
        if !(y > 0.0) {
            return Err(Error::domain("Orlicz inverse requires y > 0"));
        }
        Ok(match *self {
            OrliczU::Power { p } => pow(y, 1.0 / p),
            OrliczU::ExpAlpha { alpha } => pow(log(1.0 + y), 1.0 / alpha),
        })
    }
}

fn validate_eps_delta(eps: f64, delta: f64) -> Result<()> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::domain("accuracy eps must be finite and > 0"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain("delta must lie in (0, 1)"));
    }
    Ok(())
}

fn ceil_to_n(x: f64, what: &str) -> Result<u64> {
    if !x.is_finite() {
        return Err(Error::Evaluation {
            x,
            what: alloc::format!("{what}: sample size overflows"),
        });
    }
    let n = ceil(x);
    if n >= 9.007_199_254_740_992e15 {
        return Err(Error::Evaluation {
            x: n,
            what: alloc::format!("{what}: sample size exceeds u64-safe range"),
        });
    }
    Ok(if n < 1.0 { 1 } else { n as u64 })
}

/// Centered-draw norm bound: `‖ξ − I‖ ≤ 2‖ξ‖` regardless of I.
pub fn centered_norm(norm: f64) -> f64 {
    2.0 * norm
}

/// Orlicz-route sample size: `n = ⌈(L·U^{(−1)}(1/δ)/ε)²⌉`, where L bounds
/// the U-norm of a single centered draw.
pub fn sample_size_orlicz(l: f64, eps: f64, delta: f64, u: &OrliczU) -> Result<u64> {
    validate_eps_delta(eps, delta)?;
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::domain("Orlicz norm bound L must be finite and > 0"));
    }
    let r = l * u.inverse(1.0 / delta)? / eps;
    ceil_to_n(r * r, "sample_size_orlicz")
}

/// Reliability factor `max(1, ((−ln δ)/α)^{2α})` shared by the Power-family
/// ψ-route formulas.
fn power_reliability_factor(alpha: f64, delta: f64) -> f64 {
    let f = pow(-log(delta) / alpha, 2.0 * alpha);
    if f > 1.0 {
        f
    } else {
        1.0
    }
}

/// ψ-route sample size for a single scalar integrand.
///
/// Power family (`ψ(u) = u^α`, `α ≥ ½`):
/// `n = ⌈(4(3e)^α ‖ξ‖/ε)² · max(1, ((−ln δ)/α)^{2α})⌉`.
///
/// ExpPower family (`ψ(u) = e^{a u^β}`, `0 < β < 1`), with the case split
/// on `2aβ` relative to 1 (the `2aβ > 1` regime has no closed constant and
/// is unsupported):
///
/// * `2aβ = 1`: base `(4 e^{2^{β−1} a} ‖ξ‖/ε)²`;
/// * `2aβ < 1`: base `(4 e^{(a/2)(2^β+1) − 1/(4β)} ‖ξ‖ / ((2aβ)^{1/(4β)} ε))²`;
///
/// both multiplied by
/// `max(e^{2(β+1)}, exp{2(β+1)((−ln δ) a^{1/β}/β)^{β/(β+1)}})`.
pub fn sample_size_psi(v: &PsiVariable, eps: f64, delta: f64) -> Result<u64> {
    validate_eps_delta(eps, delta)?;
    let norm = v.norm;
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::domain("psi-route sample size requires norm > 0"));
    }
    match v.family {
        PsiFamily::Power { alpha } => {
            if !(alpha >= 0.5) {
                return Err(Error::unsupported(
                    "psi-route sample size requires power alpha >= 1/2",
                ));
            }
            let base = 4.0 * pow(3.0 * E, alpha) * norm / eps;
            ceil_to_n(
                base * base * power_reliability_factor(alpha, delta),
                "sample_size_psi",
            )
        }
        PsiFamily::ExpPower { a, beta } => {
            let prod = 2.0 * a * beta;
            if prod > 1.0 + 1e-12 {
                return Err(Error::unsupported(
                    "psi-route sample size for exp-power needs 2*a*beta <= 1",
                ));
            }
            let base = if libm::fabs(prod - 1.0) <= 1e-12 {
                4.0 * exp(pow(2.0, beta - 1.0) * a) * norm / eps
            } else {
                4.0 * exp(a / 2.0 * (pow(2.0, beta) + 1.0) - 1.0 / (4.0 * beta)) * norm
                    / (pow(prod, 1.0 / (4.0 * beta)) * eps)
            };
            let arg = pow(-log(delta) * pow(a, 1.0 / beta) / beta, beta / (beta + 1.0));
            let factor_floor = exp(2.0 * (beta + 1.0));
            let factor = exp(2.0 * (beta + 1.0) * arg);
            let factor = if factor > factor_floor { factor } else { factor_floor };
            ceil_to_n(base * base * factor, "sample_size_psi")
        }
        _ => Err(Error::unsupported(
            "psi-route sample size supports power and exp-power families only",
        )),
    }
}

/// ψ-route sample size for a C(T)-uniform certificate: given a sup-norm
/// bound B̂ on `sup_t ‖f(t,ξ)‖_ψ` from the entropy machinery,
/// `n = ⌈(e^{2α} B̂/ε)² · max(1, ((−ln δ)/α)^{2α})⌉` (Power family only).
pub fn sample_size_ct(b_hat: f64, family: &PsiFamily, eps: f64, delta: f64) -> Result<u64> {
    validate_eps_delta(eps, delta)?;
    if !(b_hat > 0.0) || !b_hat.is_finite() {
        return Err(Error::domain("sup-norm bound B_hat must be finite and > 0"));
    }
    match *family {
        PsiFamily::Power { alpha } => {
            if !(alpha > 0.0) || !alpha.is_finite() {
                return Err(Error::domain("power family requires alpha > 0"));
            }
            let base = exp(2.0 * alpha) * b_hat / eps;
            ceil_to_n(
                base * base * power_reliability_factor(alpha, delta),
                "sample_size_ct",
            )
        }
        _ => Err(Error::unsupported(
            "C(T) sample size is available for the power family only",
        )),
    }
}

/// ψ-route sample size for an L_p(T) certificate: given the norm integral
/// `(∫_T ‖f(t,ξ)‖_ψ^p dμ(t))^{1/p}`,
/// `n = ⌈(4(3p)^α·integral/ε)² · max(1, ((−ln δ)/α)^{2α})⌉` (Power family).
pub fn sample_size_lp(
    norm_integral: f64,
    p: f64,
    family: &PsiFamily,
    eps: f64,
    delta: f64,
) -> Result<u64> {
    validate_eps_delta(eps, delta)?;
    if !(norm_integral > 0.0) || !norm_integral.is_finite() {
        return Err(Error::domain("norm integral must be finite and > 0"));
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::domain("L_p exponent must be finite and >= 1"));
    }
    match *family {
        PsiFamily::Power { alpha } => {
            if !(alpha > 0.0) || !alpha.is_finite() {
                return Err(Error::domain("power family requires alpha > 0"));
            }
            let base = 4.0 * pow(3.0 * p, alpha) * norm_integral / eps;
            ceil_to_n(
                base * base * power_reliability_factor(alpha, delta),
                "sample_size_lp",
            )
        }
        _ => Err(Error::unsupported(
            "L_p sample size is available for the power family only",
        )),
    }
}

/// Chunk layout for n draws: returns the number of chunks; chunk i holds
/// [`chunk_len`]`(n, i)` draws.
pub fn chunk_count(n: u64) -> u64 {
    n.div_ceil(CHUNK_SIZE)
}

/// Number of draws assigned to chunk `index` out of n total.
pub fn chunk_len(n: u64, index: u64) -> u64 {
    let start = index * CHUNK_SIZE;
    if start >= n {
        0
    } else {
        (n - start).min(CHUNK_SIZE)
    }
}

/// Chunk layout descriptor for parallel drivers.
pub fn chunk_spec(n: u64) -> impl Iterator<Item = (u64, u64)> {
    (0..chunk_count(n)).map(move |i| (i, chunk_len(n, i)))
}

/// Sum of `len` draws from the sampler, driven by the dedicated stream for
/// this chunk.  The estimate `Σ_chunks chunk_sum / n` is bit-identical for
/// any work distribution as long as chunk sums are added in chunk order.
pub fn chunk_sum(
    seed: u64,
    chunk_index: u64,
    len: u64,
    sampler: &(dyn Fn(&mut crate::numeric::rng::StreamRng) -> f64 + Sync),
) -> Result<f64> {
    let mut rng = RngStream::new(seed, chunk_index).rng();
    let mut acc = 0.0;
    for offset in 0..len {
        let draw = sampler(&mut rng);
        if !draw.is_finite() {
            return Err(Error::Evaluation {
                x: draw,
                what: alloc::format!(
                    "non-finite draw in chunk {chunk_index} at offset {offset}"
                ),
            });
        }
        acc += draw;
    }
    Ok(acc)
}

/// Sequential reference estimator: mean of n draws over the deterministic
/// chunk partition.  Parallel drivers must reproduce this value exactly by
/// evaluating [`chunk_sum`] per chunk and reducing in chunk order.
pub fn run_chunked(
    seed: u64,
    n: u64,
    sampler: &(dyn Fn(&mut crate::numeric::rng::StreamRng) -> f64 + Sync),
) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("estimator needs at least one draw"));
    }
    let mut total = 0.0;
    for (index, len) in chunk_spec(n) {
        total += chunk_sum(seed, index, len, sampler)?;
    }
    Ok(total / n as f64)
}

/// Binomial standard error `√(q(1−q)/trials)` used by empirical validation.
pub fn binomial_se(q: f64, trials: u64) -> f64 {
    sqrt(q * (1.0 - q) / trials as f64)
}
