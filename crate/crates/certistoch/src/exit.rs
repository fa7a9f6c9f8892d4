//! Process exit-code policy.
//!
//! - 0: success
//! - 2: usage or schema error (bad flags, malformed specs, invalid parameter
//!   domains, unsupported combinations)
//! - 3: mathematical-validity error (divergence, validity threshold,
//!   failed numerical evaluation)
//! - 4: iteration/search cap exceeded

use certistoch_core::error::Error;

/// Exit code for a successful run.
pub const SUCCESS: i32 = 0;
/// Exit code for usage and schema errors.
pub const USAGE: i32 = 2;
/// Exit code for mathematical-validity errors.
pub const MATH: i32 = 3;
/// Exit code for exceeded search caps.
pub const CAP: i32 = 4;

/// Maps a core error to the process exit code.
pub fn code_for(err: &Error) -> i32 {
    match err {
        Error::Domain { .. } | Error::Unsupported { .. } => USAGE,
        Error::CapExceeded { .. } => CAP,
        Error::Divergence { .. }
        | Error::ValidityThreshold { .. }
        | Error::Evaluation { .. }
        | Error::NonMonotone { .. }
        | Error::ToleranceNotMet { .. } => MATH,
    }
}
