//! Process-wide scale caps.
//!
//! Exhaustive enumerations refuse to run over more than [`DEFAULT_SCALE_CAP`]
//! points, and cyclotomic arithmetic refuses orders above
//! [`DEFAULT_ORDER_CAP`], unless the caps are raised explicitly.

use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_SCALE_CAP: u64 = 1 << 20;
pub const DEFAULT_ORDER_CAP: u64 = 1 << 16;

static SCALE_CAP: AtomicU64 = AtomicU64::new(DEFAULT_SCALE_CAP);
static ORDER_CAP: AtomicU64 = AtomicU64::new(DEFAULT_ORDER_CAP);

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("scale cap exceeded: {requested} points requested, cap is {cap}")]
pub struct CapExceeded {
    pub requested: u128,
    pub cap: u64,
}

/// Current point-count cap; `None` means the cap was overridden.
pub fn scale_cap() -> Option<u64> {
    match SCALE_CAP.load(Ordering::Relaxed) {
        u64::MAX => None,
        c => Some(c),
    }
}

pub fn set_scale_cap(cap: Option<u64>) {
    SCALE_CAP.store(cap.unwrap_or(u64::MAX), Ordering::Relaxed);
}

pub fn order_cap() -> u64 {
    ORDER_CAP.load(Ordering::Relaxed)
}

pub fn set_order_cap(cap: u64) {
    ORDER_CAP.store(cap, Ordering::Relaxed);
}

/// Fails when `points` exceeds the scale cap.
pub fn check_points(points: u128) -> Result<(), CapExceeded> {
    match scale_cap() {
        Some(cap) if points > cap as u128 => Err(CapExceeded { requested: points, cap }),
        _ => Ok(()),
    }
}

/// `base^exp` as a u128, saturating.
pub fn pow_sat(base: u64, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
