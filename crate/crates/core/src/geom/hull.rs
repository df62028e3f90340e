//! Incremental convex hull in the affine hull of the input.
//!
//! Points are first expressed in an orthonormal frame of their affine hull, so
//! every hull computed here is full-dimensional in its local coordinates.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{self, Point};
use crate::tolerance::geom_eps;

/// A geometric facet in local coordinates: `<normal, y> <= offset` on the hull.
#[derive(Clone, Debug)]
pub(crate) struct LocalFacet {
    pub normal: Point,
    pub offset: f64,
    /// Simplices (index lists into the input) triangulating the facet.
    pub simplices: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub(crate) struct HullData {
    pub dim: usize,
    pub origin: Point,
    pub basis: Vec<Point>,
    /// Local coordinates of every input point.
    pub local: Vec<Point>,
    /// Input indices of the irredundant vertices.
    pub vertex_ids: Vec<usize>,
    pub facets: Vec<LocalFacet>,
    /// Strictly interior point in local coordinates.
    pub interior: Point,
    /// `dim`-dimensional volume.
    pub volume: f64,
    /// Absolute tolerance used for plane tests in local coordinates.
    pub tol: f64,
}

struct SimplicialFacet {
    verts: Vec<usize>,
    normal: Point,
    offset: f64,
    alive: bool,
}

pub(crate) fn convex_hull(points: &[Point]) -> Result<HullData> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let n = first.len();
    for p in points {
        if p.len() != n {
            return Err(Error::dim(n, p.len()));
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
    }
    let scale = points
        .iter()
        .flat_map(|p| p.iter())
        .fold(1.0f64, |m, x| m.max(x.abs()));
    let tol = geom_eps() * scale;

    // Greedy affine frame: the chosen points form a well-conditioned simplex.
    let start = (0..points.len())
        .min_by(|&a, &b| linalg::lex_cmp(&points[a], &points[b]))
        .expect("nonempty");
    let origin = points[start].clone();
    let mut basis: Vec<Point> = Vec::new();
    let mut chosen = vec![start];
    while basis.len() < n {
        let mut best = (0.0, usize::MAX, Vec::new());
        for (i, p) in points.iter().enumerate() {
            let r = linalg::residual(&linalg::sub(p, &origin), &basis);
            let l = linalg::norm(&r);
            if l > best.0 {
                best = (l, i, r);
            }
        }
        if best.0 <= tol {
            break;
        }
        let r = linalg::residual(&best.2, &basis);
        basis.push(linalg::normalize(&r).expect("nonzero residual"));
        chosen.push(best.1);
    }
    let d = basis.len();
    let local: Vec<Point> = points
        .iter()
        .map(|p| linalg::coords(&linalg::sub(p, &origin), &basis))
        .collect();

    let mut data = HullData {
        dim: d,
        origin,
        basis,
        local,
        vertex_ids: Vec::new(),
        facets: Vec::new(),
        interior: Vec::new(),
        volume: 1.0,
        tol,
    };
    match d {
        0 => {
            data.vertex_ids = vec![start];
        }
        1 => {
            let (mut lo, mut hi) = (start, start);
            for (i, y) in data.local.iter().enumerate() {
                if y[0] < data.local[lo][0] {
                    lo = i;
                }
                if y[0] > data.local[hi][0] {
                    hi = i;
                }
            }
            let (a, b) = (data.local[lo][0], data.local[hi][0]);
            data.vertex_ids = vec![lo, hi];
            data.facets = vec![
                LocalFacet {
                    normal: vec![-1.0],
                    offset: -a,
                    simplices: vec![vec![lo]],
                },
                LocalFacet {
                    normal: vec![1.0],
                    offset: b,
                    simplices: vec![vec![hi]],
                },
            ];
            data.interior = vec![0.5 * (a + b)];
            data.volume = b - a;
        }
        _ => incremental(&mut data, &chosen),
    }
    Ok(data)
}

fn make_facet(local: &[Point], verts: Vec<usize>, interior: &[f64], d: usize) -> SimplicialFacet {
    let base = &local[verts[0]];
    let edges: Vec<Point> = verts[1..].iter().map(|&v| linalg::sub(&local[v], base)).collect();
    let raw = linalg::cofactor_normal(&edges, d);
    let mut normal = linalg::normalize(&raw).unwrap_or_else(|| vec![0.0; d]);
    let mut offset = linalg::dot(&normal, base);
    if linalg::dot(&normal, interior) > offset {
        normal.iter_mut().for_each(|x| *x = -*x);
        offset = -offset;
    }
    SimplicialFacet {
        verts,
        normal,
        offset,
        alive: true,
    }
}

fn incremental(data: &mut HullData, simplex: &[usize]) {
    let d = data.dim;
    let tol = data.tol;
    let local = &data.local;
    let interior = linalg::centroid(&simplex.iter().map(|&i| local[i].clone()).collect::<Vec<_>>());

    let mut facets: Vec<SimplicialFacet> = Vec::new();
    for skip in 0..=d {
        let mut verts: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, &v)| v)
            .collect();
        verts.sort_unstable();
        facets.push(make_facet(local, verts, &interior, d));
    }

    let in_simplex: std::collections::HashSet<usize> = simplex.iter().copied().collect();
    let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut alive: Vec<usize> = (0..facets.len()).collect();
    for p in 0..local.len() {
        if in_simplex.contains(&p) {
            continue;
        }
        let y = &local[p];
        let mut visible = Vec::new();
        alive.retain(|&f| {
            let fa = &facets[f];
            if linalg::dot(&fa.normal, y) - fa.offset > tol {
                visible.push(f);
                false
            } else {
                true
            }
        });
        if visible.is_empty() {
            continue;
        }
        ridges.clear();
        for &f in &visible {
            facets[f].alive = false;
            let v = &facets[f].verts;
            for skip in 0..d {
                let r: Vec<usize> = v
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &x)| x)
                    .collect();
                *ridges.entry(r).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridges
            .iter()
            .filter(|(_, c)| **c == 1)
            .map(|(r, _)| r.clone())
            .collect();
        horizon.sort();
        for mut r in horizon {
            r.push(p);
            r.sort_unstable();
            facets.push(make_facet(local, r, &interior, d));
            alive.push(facets.len() - 1);
        }
    }

    // Group coplanar simplices into geometric facets.
    let ntol = 10.0 * geom_eps();
    let otol = 10.0 * tol;
    let mut groups: Vec<LocalFacet> = Vec::new();
    let mut alive_sorted = alive.clone();
    alive_sorted.sort_unstable();
    let mut volume = 0.0;
    for &f in &alive_sorted {
        let fa = &facets[f];
        debug_assert!(fa.alive);
        let rows: Vec<Point> = fa.verts.iter().map(|&v| linalg::sub(&local[v], &interior)).collect();
        volume += linalg::det(&rows).abs();
        let found = groups.iter_mut().find(|g| {
            (g.offset - fa.offset).abs() <= otol
                && g.normal.iter().zip(&fa.normal).all(|(a, b)| (a - b).abs() <= ntol)
        });
        match found {
            Some(g) => g.simplices.push(fa.verts.clone()),
            None => groups.push(LocalFacet {
                normal: fa.normal.clone(),
                offset: fa.offset,
                simplices: vec![fa.verts.clone()],
            }),
        }
    }
    volume /= linalg::factorial(d);

    // A candidate is a vertex iff the facets through it have normals of full rank.
    let mut candidates: Vec<usize> = groups
        .iter()
        .flat_map(|g| g.simplices.iter().flatten().copied())
        .collect();
    candidates.sort_unstable();
    candidates.dedup();
    let mut vertex_ids = Vec::new();
    for c in candidates {
        let y = &local[c];
        let normals: Vec<Point> = groups
            .iter()
            .filter(|g| (linalg::dot(&g.normal, y) - g.offset).abs() <= otol)
            .map(|g| g.normal.clone())
            .collect();
        if linalg::rank(&normals, d) == d {
            vertex_ids.push(c);
        }
    }

    data.vertex_ids = vertex_ids;
    data.facets = groups;
    data.interior = interior;
    data.volume = volume;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_interior_and_edge_points() {
        let pts = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.5, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
            vec![0.5, 0.5],
        ];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.dim, 2);
        let mut v = h.vertex_ids.clone();
        v.sort();
        assert_eq!(v, vec![0, 1, 3, 4]);
        assert_eq!(h.facets.len(), 4);
        assert!((h.volume - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cube_has_six_facets() {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push(vec![(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64]);
        }
        pts.push(vec![0.5, 0.5, 0.0]);
        pts.push(vec![0.5, 0.5, 0.5]);
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.facets.len(), 6);
        assert_eq!(h.vertex_ids.len(), 8);
        assert!((h.volume - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lower_dimensional_input_gets_local_frame() {
        let pts = vec![vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 1.0], vec![0.0, 2.0, 1.0]];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.dim, 2);
        assert!((h.volume - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(convex_hull(&[]).unwrap_err(), Error::EmptyPointSet);
    }
}
