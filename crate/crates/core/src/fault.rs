//! Process-wide fault injection for exercising verification harnesses.
//!
//! When enabled, relation vectors and oracle comparisons are perturbed by a
//! single coefficient so every verification path is forced to fail. Never
//! enable this inside a process whose results matter.

use std::sync::atomic::{AtomicBool, Ordering};

static ENABLED: AtomicBool = AtomicBool::new(false);

pub fn set_enabled(on: bool) {
    ENABLED.store(on, Ordering::SeqCst);
}

pub fn enabled() -> bool {
    ENABLED.load(Ordering::SeqCst)
}
