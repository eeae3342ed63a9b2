//! Checks shared by the topic suites and the acceptance runner. Each check
//! returns the first failure as a message instead of panicking.
#![allow(dead_code)]

use std::sync::atomic::{AtomicBool, Ordering};

pub type Check = Result<(), String>;

static CLAIM_VIOLATION: AtomicBool = AtomicBool::new(false);

/// Whether any library call made through [`lib`] reported a claim violation.
pub fn claim_violation_seen() -> bool {
    CLAIM_VIOLATION.load(Ordering::SeqCst)
}

/// Converts a library error into a check failure, remembering claim violations.
pub fn lib<T>(r: hatguess::Result<T>, what: impl std::fmt::Display) -> Result<T, String> {
    r.map_err(|e| {
        if matches!(e, hatguess::HatError::ClaimViolation { .. }) {
            CLAIM_VIOLATION.store(true, Ordering::SeqCst);
        }
        format!("{what}: {e}")
    })
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub mod bounds;
pub mod composition;
pub mod decomposition;
pub mod extremal;
pub mod game;
pub mod oracle;
pub mod topology;
