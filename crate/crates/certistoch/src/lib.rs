//! Standard-library companion to `certistoch-core`: parallel estimation
//! drivers, text parsing for the command-line interface, output formatting,
//! and the process exit-code policy.
//!
//! Everything numerical lives in [`core`]; this crate only adds plumbing
//! that needs `std` (threads, files, processes).

#![deny(unsafe_code)]
#![warn(missing_docs)]

pub use certistoch_core as core;

pub mod exit;
pub mod format;
pub mod parallel;
pub mod parse;
pub mod validate;
