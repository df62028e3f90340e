//! Acceptance criteria, one line per criterion.
//!
//! Runs every named suite at its default parameters (seed 7) and prints
//! `PASS` or `FAIL` with the governing tolerance. The tolerances are pinned
//! here as well; a change to the library constants fails this target.

use std::process::ExitCode;

use mixedvol::suites::{self, run_suite, SuiteSpec, SUITE_IDS};

struct Criterion {
    id: &'static str,
    tolerance: &'static str,
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: "legendre-involution", tolerance: "grid deviation <= 1e-9, runtime < 10 s" },
    Criterion { id: "ma-dual-route", tolerance: "location <= 1e-9, weight <= 1e-8 rel, mass <= 1e-9" },
    Criterion { id: "mixed-volume", tolerance: "routes <= 1e-8 rel, segments <= 1e-12" },
    Criterion { id: "ma-bodies", tolerance: "single atom at o, weight <= 1e-8 rel" },
    Criterion { id: "gnomonic", tolerance: "atomwise <= 1e-8, runtime < 30 s" },
    Criterion { id: "kubota-bodies", tolerance: "3 sigma + approximant error, N = 2e4, 128-gon" },
    Criterion { id: "kubota-functions", tolerance: "3 sigma, N = 1e4, j = 0 and 3 exact, runtime < 60 s" },
    Criterion { id: "restriction", tolerance: "atomwise <= 1e-8" },
    Criterion { id: "nesting-bodies", tolerance: "zero violations" },
    Criterion { id: "steiner-bridge", tolerance: "cap masses and vanishing coefficients <= 1e-8" },
    Criterion { id: "support-nesting-ma", tolerance: "zero violations" },
];

fn pinned_tolerances_hold() -> Result<(), String> {
    let pinned: [(&str, f64, f64); 16] = [
        ("INVOLUTION_TOL", suites::INVOLUTION_TOL, 1e-9),
        ("MA_LOCATION_TOL", suites::MA_LOCATION_TOL, 1e-9),
        ("MA_WEIGHT_TOL", suites::MA_WEIGHT_TOL, 1e-8),
        ("MASS_TOL", suites::MASS_TOL, 1e-9),
        ("MIXED_VOLUME_TOL", suites::MIXED_VOLUME_TOL, 1e-8),
        ("SEGMENT_TOL", suites::SEGMENT_TOL, 1e-12),
        ("MA_BODIES_TOL", suites::MA_BODIES_TOL, 1e-8),
        ("GNOMONIC_TOL", suites::GNOMONIC_TOL, 1e-8),
        ("RESTRICTION_TOL", suites::RESTRICTION_TOL, 1e-8),
        ("STEINER_TOL", suites::STEINER_TOL, 1e-8),
        ("SIGMAS", suites::SIGMAS, 3.0),
        ("KUBOTA_BODIES_SAMPLES", suites::KUBOTA_BODIES_SAMPLES as f64, 2e4),
        ("KUBOTA_FUNCTIONS_SAMPLES", suites::KUBOTA_FUNCTIONS_SAMPLES as f64, 1e4),
        ("INVOLUTION_BUDGET", suites::INVOLUTION_BUDGET, 10.0),
        ("GNOMONIC_BUDGET", suites::GNOMONIC_BUDGET, 30.0),
        ("KUBOTA_FUNCTIONS_BUDGET", suites::KUBOTA_FUNCTIONS_BUDGET, 60.0),
    ];
    for (name, actual, expected) in pinned {
        if actual != expected {
            return Err(format!("{name} is {actual}, pinned at {expected}"));
        }
    }
    if 4 * suites::POLYGON_REFINEMENT != 128 {
        return Err("polygon baseline is not the 128-gon".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let pinned = pinned_tolerances_hold();
    if let Err(e) = &pinned {
        println!("FAIL  pinned tolerances: {e}");
    }
    let mut passed = 0;
    assert_eq!(CRITERIA.map(|c| c.id), SUITE_IDS);
    for (k, c) in CRITERIA.iter().enumerate() {
        let spec = SuiteSpec::new(c.id).expect("known suite");
        let (ok, detail) = match run_suite(&spec) {
            Ok(r) => {
                let runtime = r.metrics.get("runtime_s").and_then(|v| v.as_f64()).unwrap_or(f64::NAN);
                let first = r.violations.first().map(|v| format!("; first violation {v}")).unwrap_or_default();
                (r.pass, format!("{} witnesses, {} violations, {runtime:.2} s{first}", r.witnesses_checked, r.violations.len()))
            }
            Err(e) => (false, format!("error: {e}")),
        };
        passed += usize::from(ok);
        println!("{}  {:>2} {:<20} [{}] {}", if ok { "PASS" } else { "FAIL" }, k + 1, c.id, c.tolerance, detail);
    }
    println!("acceptance: {passed} of {} criteria passed", CRITERIA.len());
    if pinned.is_ok() && passed == CRITERIA.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
