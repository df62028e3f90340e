//! Numerical tolerances shared by every exact routine.
//!
//! The geometric tolerance is a process-wide setting so that the command line
//! can override it (`--tol`). Library users normally leave it at
//! [`DEFAULT_GEOM_EPS`].

use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

/// Default tolerance for coplanarity and coincidence decisions.
pub const DEFAULT_GEOM_EPS: f64 = 1e-9;

/// Atoms closer than this (Euclidean / chordal), relative beyond the unit ball, are merged.
pub const MERGE_RADIUS: f64 = 1e-9;

/// Weights with absolute value below this are dropped from finalized measures.
pub const DROP_WEIGHT: f64 = 1e-12;

/// Finalized measures may not carry weights below `-NEGATIVE_GUARD`.
pub const NEGATIVE_GUARD: f64 = 1e-10;

/// Relative singular-value threshold used for rank decisions.
pub const RANK_REL_TOL: f64 = 1e-9;

static GEOM_EPS_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Current geometric tolerance.
#[inline]
pub fn geom_eps() -> f64 {
    f64::from_bits(GEOM_EPS_BITS.load(Ordering::Relaxed))
}

/// Overrides the geometric tolerance for the whole process.
pub fn set_geom_eps(eps: f64) {
    GEOM_EPS_BITS.store(eps.to_bits(), Ordering::Relaxed);
}

/// Snapshot of the tolerances in effect, embedded into reports.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ToleranceSet {
    pub geom_eps: f64,
    pub merge_radius: f64,
    pub drop_weight: f64,
    pub negative_guard: f64,
    pub rank_rel_tol: f64,
}

impl ToleranceSet {
    pub fn current() -> Self {
        Self {
            geom_eps: geom_eps(),
            merge_radius: MERGE_RADIUS,
            drop_weight: DROP_WEIGHT,
            negative_guard: NEGATIVE_GUARD,
            rank_rel_tol: RANK_REL_TOL,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_bits_decode_to_1e_minus_9() {
        assert_eq!(DEFAULT_GEOM_EPS.to_bits(), 0x3E11_2E0B_E826_D695);
        assert_eq!(geom_eps(), DEFAULT_GEOM_EPS);
    }
}
