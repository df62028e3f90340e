//! File formats round-trip and reports carry their provenance.

use mixedvol::convex::PLConvexFunction;
use mixedvol::integral::Sampler;
use mixedvol::io::{
    function_from_value, function_to_value, measure_to_value, parse_function, parse_measure, parse_polytope,
    polytope_from_value, polytope_to_value, to_json_string,
};
use mixedvol::measure::surface_area_measure;
use mixedvol::random::{random_compact_pl_function, random_pl_function, random_polytope};
use mixedvol::report::VERSION;
use mixedvol::suites::{run_suite, SuiteSpec};
use mixedvol::tolerance::ToleranceSet;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn polytopes_round_trip_exactly(seed in any::<u64>(), n in 1usize..=4) {
        let p = random_polytope(n, n + 3, &mut Sampler::new(seed, 0)).unwrap();
        let text = to_json_string(&polytope_to_value(&p));
        let back = parse_polytope(&text).unwrap();
        prop_assert_eq!(back.vertices(), p.vertices());
        let again = polytope_from_value(polytope_to_value(&back)).unwrap();
        prop_assert_eq!(again.vertices(), p.vertices());
    }

    #[test]
    fn functions_round_trip_exactly(seed in any::<u64>(), n in 1usize..=3, compact in any::<bool>()) {
        let mut s = Sampler::new(seed, 0);
        let f: PLConvexFunction = if compact {
            random_compact_pl_function(n, 4, &mut s).unwrap()
        } else {
            random_pl_function(n, 4, &mut s).unwrap()
        };
        let text = to_json_string(&function_to_value(&f));
        let back = parse_function(&text).unwrap();
        prop_assert_eq!(function_to_value(&back), function_to_value(&f));
        prop_assert_eq!(function_to_value(&function_from_value(function_to_value(&f)).unwrap()), function_to_value(&f));
    }

    #[test]
    fn measures_round_trip_exactly(seed in any::<u64>(), n in 2usize..=4) {
        let m = surface_area_measure(&random_polytope(n, n + 3, &mut Sampler::new(seed, 0)).unwrap());
        let back = parse_measure(&to_json_string(&measure_to_value(&m))).unwrap();
        prop_assert_eq!(back, m);
    }
}

#[test]
fn reports_embed_version_seed_and_tolerances() {
    let mut spec = SuiteSpec::new("mixed-volume").unwrap();
    spec.seed = 11;
    let report = run_suite(&spec).unwrap();
    assert_eq!(report.version, VERSION);
    assert_eq!(report.seed, Some(11));
    assert_eq!(report.tolerances, ToleranceSet::current());
}

#[test]
fn same_seed_gives_identical_json() {
    let spec = SuiteSpec::new("ma-bodies").unwrap();
    let strip = |mut v: serde_json::Value| {
        v["metrics"].as_object_mut().unwrap().remove("runtime_s");
        to_json_string(&v)
    };
    let a = strip(serde_json::to_value(run_suite(&spec).unwrap()).unwrap());
    let b = strip(serde_json::to_value(run_suite(&spec).unwrap()).unwrap());
    assert_eq!(a, b);
}

#[test]
fn malformed_input_is_a_parse_error() {
    for text in ["", "{", r#"{"dim": 2, "vertices": []}"#, r#"{"dim": 2, "vertices": [[1.0]]}"#, r#"{"dim": 1, "vertices": [[0]], "extra": 1}"#] {
        assert!(parse_polytope(text).unwrap_err().is_parse(), "{text}");
    }
}
