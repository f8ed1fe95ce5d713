//! Process-wide relative tolerance.
//!
//! Defaults to `1e-9`. The `TRICONIC_TOL` environment variable overrides the
//! default the first time the value is read; [`set`] overrides it at runtime.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Once;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const ENV_VAR: &str = "TRICONIC_TOL";

static TOL_BITS: AtomicU64 = AtomicU64::new(0);
static INIT: Once = Once::new();

fn init() {
    INIT.call_once(|| {
        let v = std::env::var(ENV_VAR)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|v| v.is_finite() && *v > 0.0)
            .unwrap_or(DEFAULT_TOLERANCE);
        TOL_BITS.store(v.to_bits(), Ordering::Relaxed);
    });
}

/// Returns the current global tolerance.
pub fn get() -> f64 {
    init();
    f64::from_bits(TOL_BITS.load(Ordering::Relaxed))
}

/// Replaces the global tolerance. Non-positive or non-finite values are ignored.
pub fn set(v: f64) {
    init();
    if v.is_finite() && v > 0.0 {
        TOL_BITS.store(v.to_bits(), Ordering::Relaxed);
    }
}

/// Restores [`DEFAULT_TOLERANCE`].
pub fn reset() {
    set(DEFAULT_TOLERANCE);
}
