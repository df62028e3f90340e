//! Touching cones and extreme directions of random polytopes.

use mixedvol::geom::Polytope;
use mixedvol::integral::{sample_rotation, Sampler};
use mixedvol::linalg::{self, Point};
use mixedvol::random::random_polytope;
use mixedvol::support::{is_mixed_extreme_ball, is_r_extreme, normal_fan, support_membership_via_projections, touching_cone};
use proptest::prelude::*;

fn setup(seed: u64, n: usize) -> (Polytope, Vec<Point>) {
    let mut s = Sampler::new(seed, 0);
    let p = random_polytope(n, n + 3, &mut s).unwrap();
    let dirs = normal_fan(&p).unwrap().cones.iter().map(|c| c.representative()).collect();
    (p, dirs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn touching_cone_dimension_is_rotation_invariant(seed in any::<u64>(), n in 2usize..=4) {
        let (p, dirs) = setup(seed, n);
        let rot = sample_rotation(n, &mut Sampler::new(seed, 1));
        let apply = |x: &[f64]| -> Point { rot.iter().map(|r| linalg::dot(r, x)).collect() };
        let q = p.linear_image(&rot);
        for z in &dirs {
            let rz = linalg::normalize(&apply(z)).unwrap();
            prop_assert_eq!(touching_cone(&q, &rz).unwrap().dim, touching_cone(&p, z).unwrap().dim);
        }
    }

    #[test]
    fn facet_normals_are_extreme(seed in any::<u64>(), n in 2usize..=4) {
        let (p, _) = setup(seed, n);
        for f in p.facets() {
            prop_assert!(is_r_extreme(&p, &f.normal, 0).unwrap());
        }
    }

    #[test]
    fn mixed_extremality_is_monotone_in_j(seed in any::<u64>(), n in 3usize..=4) {
        let (p, dirs) = setup(seed, n);
        for z in &dirs {
            let flags: Vec<bool> = (1..n).map(|j| is_mixed_extreme_ball(&p, z, j).unwrap()).collect();
            prop_assert!(flags.windows(2).all(|w| w[0] || !w[1]), "{:?} at {:?}", flags, z);
        }
    }

    #[test]
    fn deciders_agree_on_fan_representatives(seed in any::<u64>(), n in 2usize..=4) {
        let (p, dirs) = setup(seed, n);
        for z in &dirs {
            for j in 1..n {
                prop_assert_eq!(is_mixed_extreme_ball(&p, z, j).unwrap(), support_membership_via_projections(&p, z, j).unwrap());
            }
        }
    }

    #[test]
    fn top_index_reduces_to_zero_extreme(seed in any::<u64>(), n in 2usize..=4) {
        let (p, dirs) = setup(seed, n);
        for z in &dirs {
            prop_assert_eq!(is_mixed_extreme_ball(&p, z, n - 1).unwrap(), is_r_extreme(&p, z, 0).unwrap());
        }
    }
}
