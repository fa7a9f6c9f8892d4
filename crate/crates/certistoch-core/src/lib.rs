//! Certified probability bounds for random variables and stochastic processes.
//!
//! This crate is the computational core of `certistoch`. It implements, with
//! no dependency on `std` (only `alloc`), the calculus needed to *certify*
//! accuracy/reliability statements of the form `P{error > eps} <= delta`:
//!
//! - [`psi`] — the F_ψ(Ω) calculus: weight families ψ(u), moment-growth norms
//!   of standard variables, closed-form and optimized tail bounds, majorizing
//!   characteristics κ(n) and the condition-H space constants C_ψ;
//! - [`process`] — metric-entropy machinery on real intervals: massiveness
//!   bounds, the supremum-norm bound B(p), supremum tail bounds and the
//!   series-remainder bound B_N with its optimal chaining parameter;
//! - [`series`] — an end-to-end spectral series model for a stationary
//!   process with covariance density `e^{-|λ|}` on `[-A, A]`: coefficient
//!   evaluators, remainder constants, truncation selection for a requested
//!   accuracy ε and reliability 1−δ, and trajectory synthesis;
//! - [`subgauss`] — the φ-sub-Gaussian accuracy/reliability calculus:
//!   τ-budget combination, L_p model criteria, a uniform (C(T)) tail bound,
//!   and remainder bounds for seven orthogonal expansion bases;
//! - [`mc`] — certified Monte-Carlo integration: sample-size formulas for the
//!   Orlicz and ψ-norm routes and a deterministic chunked estimator that is
//!   bit-identical for any worker count;
//! - [`dvw`] — the D_{V,W}(Ω) prenorm machinery for power pairs
//!   `V(x)=|x|^b`, `W(x)=|x|^a`: prenorm evaluation, κ(n), series tail
//!   bounds, supremum tail bounds, and the model-reliability condition;
//! - [`numeric`] — shared numerical plumbing: 1-D minimization, monotone
//!   integer threshold search, adaptive quadrature, special functions and
//!   reproducible counter-based random streams.
//!
//! Everything here is pure and deterministic: all operations are value-based,
//! re-entrant and safe to call concurrently, and random streams are fully
//! determined by a `(seed, stream_index)` pair.

#![no_std]
#![deny(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod dvw;
pub mod error;
pub mod mc;
pub mod numeric;
pub mod process;
pub mod psi;
pub mod series;
pub mod subgauss;

pub use error::{Error, Result};
