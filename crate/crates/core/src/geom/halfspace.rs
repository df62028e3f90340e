//! Vertex enumeration of bounded halfspace intersections by polar duality.

use crate::error::{Error, Result};
use crate::geom::polytope::Polytope;
use crate::linalg::{self, Point};
use crate::tolerance::geom_eps;

/// Vertices of `{x : <g_i, x> <= h_i}` given a strictly interior point.
///
/// The constraint `<g, x - c> <= h - <g, c>` maps to the dual point
/// `g / (h - <g, c>)`; each facet `<w, y> <= beta` of the dual hull yields the
/// primal vertex `c + w / beta`.
pub fn vertices_from_halfspaces(constraints: &[(Point, f64)], interior: &[f64]) -> Result<Vec<Point>> {
    let d = interior.len();
    if d == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut dual = Vec::with_capacity(constraints.len());
    for (g, h) in constraints {
        if g.len() != d {
            return Err(Error::dim(d, g.len()));
        }
        let slack = h - linalg::dot(g, interior);
        if slack <= geom_eps() * linalg::norm(g).max(1.0) {
            return Err(Error::InvalidArgument("reference point is not strictly interior".into()));
        }
        dual.push(linalg::scale(g, 1.0 / slack));
    }
    let dual_hull = Polytope::from_points(&dual)?;
    // bounded iff the origin is interior to the dual hull
    if !dual_hull.is_full_dimensional() || dual_hull.facets().iter().any(|f| f.offset <= 0.0) {
        return Err(Error::InvalidArgument("halfspace intersection is unbounded".into()));
    }
    let mut out: Vec<Point> = dual_hull
        .facets()
        .iter()
        .map(|f| linalg::add(interior, &linalg::scale(&f.normal, 1.0 / f.offset)))
        .collect();
    out.sort_by(|a, b| linalg::lex_cmp(a, b));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_from_four_halfspaces() {
        let cons = vec![
            (vec![1.0, 0.0], 1.0),
            (vec![-1.0, 0.0], 0.0),
            (vec![0.0, 1.0], 1.0),
            (vec![0.0, -1.0], 0.0),
            (vec![1.0, 1.0], 5.0),
        ];
        let v = vertices_from_halfspaces(&cons, &[0.3, 0.6]).unwrap();
        assert_eq!(v.len(), 4);
        let p = Polytope::from_points(&v).unwrap();
        assert!((p.volume() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_is_rejected() {
        let cons = vec![(vec![1.0, 0.0], 1.0), (vec![0.0, 1.0], 1.0)];
        assert!(vertices_from_halfspaces(&cons, &[0.0, 0.0]).is_err());
    }
}
