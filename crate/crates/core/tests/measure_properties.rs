//! Area-measure and mixed-volume invariants on random polytopes.

use mixedvol::geom::{minkowski_combination, Polytope};
use mixedvol::integral::{sample_rotation, Sampler};
use mixedvol::linalg::{self, factorial};
use mixedvol::measure::{mixed_area_measure, mixed_volume, mixed_volume_routes, surface_area_measure, DiscreteMeasure, MeasureKind};
use mixedvol::random::{point_in_box, random_polytope};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn polytopes(n: usize, count: usize, seed: u64) -> Vec<Polytope> {
    let mut s = Sampler::new(seed, 0);
    (0..count).map(|i| random_polytope(n, n + 2 + i % 3, &mut s).unwrap()).collect()
}

/// `n! V(K_1, ..., K_n)` as the mixed difference of `λ ↦ vol(Σ λ_i K_i)` around
/// `λ = (1, ..., 1)`. Every other monomial of the degree-`n` volume polynomial
/// misses some `λ_i`, so the difference is exact for any step.
fn mixed_difference(bodies: &[Polytope], step: f64) -> f64 {
    let n = bodies.len();
    let refs: Vec<&Polytope> = bodies.iter().collect();
    let mut total = 0.0;
    for mask in 0..1u32 << n {
        let signs: Vec<f64> = (0..n).map(|i| if mask >> i & 1 == 1 { 1.0 } else { -1.0 }).collect();
        let coeffs: Vec<f64> = signs.iter().map(|s| 1.0 + s * step).collect();
        let sign: f64 = signs.iter().product();
        total += sign * minkowski_combination(&refs, &coeffs).unwrap().volume();
    }
    total / (2.0 * step).powi(n as i32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn surface_measure_is_translation_invariant(seed in any::<u64>(), n in 2usize..=4) {
        let p = &polytopes(n, 1, seed)[0];
        let t = point_in_box(n, 3.0, &mut Sampler::new(seed, 1));
        prop_assert!(surface_area_measure(&p.translate(&t)).agrees_with(&surface_area_measure(p), TOL, TOL));
    }

    #[test]
    fn surface_measure_is_rotation_covariant(seed in any::<u64>(), n in 2usize..=4) {
        let p = &polytopes(n, 1, seed)[0];
        let rot = sample_rotation(n, &mut Sampler::new(seed, 1));
        let rotated = surface_area_measure(&p.linear_image(&rot));
        let pushed = surface_area_measure(p).map(MeasureKind::Sphere, n, |u| rot.iter().map(|r| linalg::dot(r, u)).collect());
        prop_assert!(rotated.agrees_with(&pushed, TOL, TOL));
    }

    #[test]
    fn mixed_area_measure_is_multilinear(seed in any::<u64>(), lambda in 0.0f64..3.0, mu in 0.0f64..3.0) {
        let ks = polytopes(3, 3, seed);
        let combo = minkowski_combination(&[&ks[0], &ks[1]], &[lambda, mu]).unwrap();
        let lhs = mixed_area_measure(&[combo, ks[2].clone()]).unwrap();
        let a = mixed_area_measure(&[ks[0].clone(), ks[2].clone()]).unwrap();
        let b = mixed_area_measure(&[ks[1].clone(), ks[2].clone()]).unwrap();
        let rhs = DiscreteMeasure::linear_combination(MeasureKind::Sphere, 3, &[(lambda, &a), (mu, &b)]);
        prop_assert!(lhs.agrees_with(&rhs, TOL, TOL), "{:?}", lhs.diff(&rhs));
    }

    #[test]
    fn facet_normals_balance(seed in any::<u64>(), n in 2usize..=4) {
        let m = surface_area_measure(&polytopes(n, 1, seed)[0]);
        for i in 0..n {
            prop_assert!(m.integrate(|u| u[i]).abs() <= TOL * m.total_mass().max(1.0));
        }
    }

    #[test]
    fn mixed_volume_routes_agree(seed in any::<u64>()) {
        let (a, b) = mixed_volume_routes(&polytopes(3, 3, seed)).unwrap();
        prop_assert!((a - b).abs() <= 1e-8 * a.abs().max(b.abs()));
    }

    #[test]
    fn mixed_volume_matches_mixed_difference(seed in any::<u64>(), n in 2usize..=3, step in 0.1f64..0.9) {
        let ks = polytopes(n, n, seed);
        let v = mixed_volume(&ks).unwrap();
        let oracle = mixed_difference(&ks, step) / factorial(n);
        prop_assert!((v - oracle).abs() <= 1e-8 * v.abs().max(1.0), "{} vs {}", v, oracle);
    }
}
