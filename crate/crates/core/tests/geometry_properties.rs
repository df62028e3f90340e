//! Polytope invariants on random inputs.

use mixedvol::geom::{Polytope, Subspace};
use mixedvol::integral::{column, sample_rotation, Sampler};
use mixedvol::random::{random_polytope, point_in_box};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn polytope(n: usize, seed: u64, stream: u64) -> Polytope {
    let mut s = Sampler::new(seed, stream);
    random_polytope(n, n + 3, &mut s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hull_is_idempotent(seed in any::<u64>(), n in 1usize..=4) {
        let p = polytope(n, seed, 0);
        let again = Polytope::from_points(p.vertices()).unwrap();
        prop_assert_eq!(again.vertices(), p.vertices());
    }

    #[test]
    fn minkowski_sum_commutes_and_associates(seed in any::<u64>(), n in 1usize..=4) {
        let (p, q, r) = (polytope(n, seed, 0), polytope(n, seed, 1), polytope(n, seed, 2));
        let pq = p.minkowski_sum(&q).unwrap();
        prop_assert!(pq.approx_eq(&q.minkowski_sum(&p).unwrap(), TOL));
        let left = pq.minkowski_sum(&r).unwrap();
        let right = p.minkowski_sum(&q.minkowski_sum(&r).unwrap()).unwrap();
        prop_assert!(left.approx_eq(&right, TOL));
    }

    #[test]
    fn volume_is_homogeneous(seed in any::<u64>(), n in 1usize..=4, lambda in prop::sample::select(vec![0.5, 2.0])) {
        let p = polytope(n, seed, 0);
        let v = p.volume();
        prop_assert!((p.scaled(lambda).volume() - lambda.powi(n as i32) * v).abs() <= TOL * v.max(1.0));
    }

    #[test]
    fn projections_compose(seed in any::<u64>(), n in 2usize..=4) {
        // E ⊆ F from one random frame; project through F first
        let p = polytope(n, seed, 0);
        let rot = sample_rotation(n, &mut Sampler::new(seed, 3));
        let f = Subspace::new(n, (0..n - 1).map(|c| column(&rot, c)).collect()).unwrap();
        let e = Subspace::new(n, vec![column(&rot, 0)]).unwrap();
        let through = p.project(&f).unwrap().project(&e.relative_to(&f)).unwrap();
        prop_assert!(through.approx_eq(&p.project(&e).unwrap(), TOL));
    }

    #[test]
    fn support_function_is_additive(seed in any::<u64>(), n in 1usize..=4) {
        let (p, q) = (polytope(n, seed, 0), polytope(n, seed, 1));
        let sum = p.minkowski_sum(&q).unwrap();
        let mut s = Sampler::new(seed, 9);
        for _ in 0..100 {
            let x = point_in_box(n, 2.0, &mut s);
            let lhs = sum.support_function(&x);
            prop_assert!((lhs - p.support_function(&x) - q.support_function(&x)).abs() <= TOL * lhs.abs().max(1.0));
        }
    }
}
