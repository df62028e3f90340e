//! Conjugation and Monge-Ampère invariants for random PL functions.

use mixedvol::convex::{conj_ma, epigraph_body, gnomonic_transfer, ma_measure, mixed_ma, PLConvexFunction, Piece};
use mixedvol::integral::Sampler;
use mixedvol::measure::{DiscreteMeasure, MeasureKind};
use mixedvol::random::{point_in_box, random_compact_pl_function, random_pl_function};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn finite(n: usize, pieces: usize, seed: u64, stream: u64) -> PLConvexFunction {
    random_pl_function(n, pieces, &mut Sampler::new(seed, stream)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugation_is_an_involution(seed in any::<u64>(), n in 1usize..=3, pieces in 2usize..=8) {
        let v = finite(n, pieces, seed, 0);
        let back = v.legendre().unwrap().legendre().unwrap();
        let mut s = Sampler::new(seed, 1);
        for _ in 0..200 {
            let x = point_in_box(n, 3.0, &mut s);
            prop_assert!((back.evaluate(&x) - v.evaluate(&x)).abs() <= TOL);
        }
    }

    #[test]
    fn conjugation_reverses_order(seed in any::<u64>(), n in 1usize..=3, pieces in 2usize..=6) {
        // g = max(f, extra pieces) >= f pointwise
        let f = finite(n, pieces, seed, 0);
        let extra = finite(n, 3, seed, 1);
        let all: Vec<Piece> = f.pieces().iter().chain(extra.pieces()).cloned().collect();
        let g = PLConvexFunction::new(n, all, None).unwrap();
        let (fs, gs) = (f.legendre().unwrap(), g.legendre().unwrap());
        let mut s = Sampler::new(seed, 2);
        for _ in 0..200 {
            let y = point_in_box(n, 1.2, &mut s);
            let (a, b) = (gs.evaluate(&y), fs.evaluate(&y));
            prop_assert!(a <= b + TOL, "g*({:?}) = {} > f* = {}", y, a, b);
        }
    }

    #[test]
    fn ma_mass_is_conjugate_domain_volume(seed in any::<u64>(), n in 1usize..=3, pieces in 2usize..=8) {
        let v = finite(n, pieces, seed, 0);
        let dom = v.legendre().unwrap().domain().cloned().unwrap();
        let expected = if dom.is_full_dimensional() { dom.volume() } else { 0.0 };
        prop_assert!((ma_measure(&v).unwrap().total_mass() - expected).abs() <= TOL * expected.max(1.0));
    }

    #[test]
    fn mixed_ma_is_symmetric(seed in any::<u64>()) {
        let vs: Vec<PLConvexFunction> = (0..3).map(|i| finite(3, 4, seed, i)).collect();
        let base = mixed_ma(&vs).unwrap();
        for p in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
            let permuted = mixed_ma(&[vs[p[0]].clone(), vs[p[1]].clone(), vs[p[2]].clone()]).unwrap();
            prop_assert!(permuted.agrees_with(&base, TOL, 1e-8));
        }
    }

    #[test]
    fn mixed_ma_is_slot_linear(seed in any::<u64>(), lambda in 0.0f64..2.0, mu in 0.0f64..2.0, n in 2usize..=3) {
        let (v, w) = (finite(n, 4, seed, 0), finite(n, 4, seed, 1));
        let rest: Vec<PLConvexFunction> = (2..n as u64 + 1).map(|i| finite(n, 4, seed, i)).collect();
        let combo = v.scale(lambda).unwrap().add(&w.scale(mu).unwrap()).unwrap();
        let with = |first: PLConvexFunction| {
            let mut slots = vec![first];
            slots.extend(rest.iter().cloned());
            mixed_ma(&slots).unwrap()
        };
        let (a, b) = (with(v.clone()), with(w.clone()));
        let rhs = DiscreteMeasure::linear_combination(MeasureKind::Point, n, &[(lambda, &a), (mu, &b)]);
        let lhs = with(combo);
        prop_assert!(lhs.agrees_with(&rhs, TOL, 1e-8), "{:?}", lhs.diff(&rhs));
    }

    #[test]
    fn gnomonic_identity_on_box_indicators(seed in any::<u64>(), n in 1usize..=3) {
        let u = random_compact_pl_function(n, 3, &mut Sampler::new(seed, 0)).unwrap();
        let transferred = gnomonic_transfer(&epigraph_body(&u).unwrap()).unwrap();
        let direct = conj_ma(&vec![u; n]).unwrap();
        let mut s = Sampler::new(seed, 1);
        for _ in 0..10 {
            let (c, r) = (point_in_box(n, 1.5, &mut s), 0.2 + s.uniform());
            let phi = |x: &[f64]| if x.iter().zip(&c).all(|(a, b)| (a - b).abs() <= r) { 1.0 } else { 0.0 };
            prop_assert!((transferred.integrate(phi) - direct.integrate(phi)).abs() <= 1e-8);
        }
    }
}
