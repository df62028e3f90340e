//! Seeded generators of random test objects.

use crate::convex::{PLConvexFunction, Piece};
use crate::error::Result;
use crate::geom::Polytope;
use crate::integral::Sampler;
use crate::linalg::Point;

/// Uniform point in `[-r, r]^n`.
pub fn point_in_box(n: usize, r: f64, s: &mut Sampler) -> Point {
    (0..n).map(|_| r * (2.0 * s.uniform() - 1.0)).collect()
}

/// Full-dimensional hull of `count >= n + 1` uniform points in `[-1, 1]^n`.
pub fn random_polytope(n: usize, count: usize, s: &mut Sampler) -> Result<Polytope> {
    let count = count.max(n + 1);
    loop {
        let pts: Vec<Point> = (0..count).map(|_| point_in_box(n, 1.0, s)).collect();
        let p = Polytope::from_points(&pts)?;
        if p.is_full_dimensional() && p.volume() > 1e-3 {
            return Ok(p);
        }
    }
}

pub fn random_simplex(n: usize, s: &mut Sampler) -> Result<Polytope> {
    random_polytope(n, n + 1, s)
}

/// Maximum of `pieces` affine functions with gradients in `[-1, 1]^n` and
/// offsets in `[-1, 1]`.
pub fn random_pl_function(n: usize, pieces: usize, s: &mut Sampler) -> Result<PLConvexFunction> {
    let pieces = (0..pieces)
        .map(|_| Piece::new(point_in_box(n, 1.0, s), 2.0 * s.uniform() - 1.0))
        .collect();
    PLConvexFunction::new(n, pieces, None)
}

/// A random finite PL function whose gradients span a full-dimensional hull.
pub fn random_coercive_dual(n: usize, pieces: usize, s: &mut Sampler) -> Result<PLConvexFunction> {
    loop {
        let v = random_pl_function(n, pieces.max(n + 1), s)?;
        let grads: Vec<Point> = v.pieces().iter().map(|p| p.a.clone()).collect();
        let hull = Polytope::from_points(&grads)?;
        if hull.is_full_dimensional() && hull.volume() > 1e-3 {
            return Ok(v);
        }
    }
}

/// A PL function on a random full-dimensional polytope.
pub fn random_compact_pl_function(n: usize, pieces: usize, s: &mut Sampler) -> Result<PLConvexFunction> {
    let domain = random_polytope(n, n + 2, s)?;
    let pieces = (0..pieces)
        .map(|_| Piece::new(point_in_box(n, 1.0, s), 2.0 * s.uniform() - 1.0))
        .collect();
    PLConvexFunction::new(n, pieces, Some(domain))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_seeded() {
        let a = random_polytope(3, 8, &mut Sampler::new(1, 0)).unwrap();
        let b = random_polytope(3, 8, &mut Sampler::new(1, 0)).unwrap();
        assert_eq!(a, b);
        let f = random_compact_pl_function(2, 4, &mut Sampler::new(2, 0)).unwrap();
        assert!(!f.is_finite());
        let g = random_coercive_dual(3, 5, &mut Sampler::new(3, 0)).unwrap();
        assert!(g.is_finite());
    }
}
