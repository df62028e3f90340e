//! A corrupted geometric tolerance must surface as named selftest failures.
//! The tolerance is process-wide, so this file holds a single test.

use mixedvol::selftest::run_selftest;
use mixedvol::tolerance::set_geom_eps;

#[test]
fn unit_tolerance_fails_with_ids() {
    set_geom_eps(1.0);
    let summary = run_selftest();
    assert!(!summary.pass);
    assert!(summary.failed.contains(&"hull-drops-interior-point"), "{:?}", summary.failed);
    assert!(summary.failed.contains(&"volume-cube"));
    assert_eq!(summary.passed + summary.failed.len(), summary.total);
}
