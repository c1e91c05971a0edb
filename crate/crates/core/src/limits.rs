//! Guard for the checkers that enumerate every subset of a leaf or ground
//! set.

use std::sync::OnceLock;

/// Default largest leaf set that exhaustive checkers accept.
pub const DEFAULT_MAX_LEAVES: usize = 20;

/// Environment variable overriding [`DEFAULT_MAX_LEAVES`].
pub const MAX_LEAVES_ENV: &str = "LCADAG_MAX_LEAVES";

/// The exhaustive-subset bound, read once from `LCADAG_MAX_LEAVES` and
/// falling back to [`DEFAULT_MAX_LEAVES`].
pub fn exhaustive_bound() -> usize {
    static BOUND: OnceLock<usize> = OnceLock::new();
    *BOUND.get_or_init(|| {
        std::env::var(MAX_LEAVES_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_LEAVES)
    })
}
