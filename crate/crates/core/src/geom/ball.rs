//! Inscribed polytopal approximants of the unit ball.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::polytope::Polytope;
use crate::linalg::{self, Point};

/// Inscribed approximant `P ⊆ B^d` with `(1 - delta) B^d ⊆ P`.
#[derive(Clone, Debug)]
pub struct BallApprox {
    pub polytope: Polytope,
    /// Hausdorff distance to the unit ball.
    pub delta: f64,
}

/// `d = 1`: `[-1, 1]`, exact.
/// `d = 2`: regular `4m`-gon through `(±1,0), (0,±1)`.
/// `d = 3`: octahedron refined `m - 1` times by midpoint subdivision, projected to the sphere.
/// `d ≥ 4`: boundary points of the grid `{-m..m}^d`, projected to the sphere.
pub fn ball_approx(d: usize, m: usize) -> Result<BallApprox> {
    if d == 0 || m == 0 {
        return Err(Error::InvalidArgument("ball_approx needs d >= 1 and m >= 1".into()));
    }
    let points: Vec<Point> = match d {
        1 => vec![vec![-1.0], vec![1.0]],
        2 => {
            let k = 4 * m;
            (0..k)
                .map(|i| {
                    let t = 2.0 * PI * i as f64 / k as f64;
                    vec![t.cos(), t.sin()]
                })
                .collect()
        }
        3 => octahedron_refinement(m),
        _ => grid_sphere(d, m),
    };
    let polytope = Polytope::from_points(&points)?;
    let delta = match d {
        1 => 0.0,
        2 => 1.0 - (PI / (4 * m) as f64).cos(),
        _ => {
            1.0 - polytope
                .facets()
                .iter()
                .map(|f| f.offset)
                .fold(f64::INFINITY, f64::min)
        }
    };
    Ok(BallApprox { polytope, delta })
}

fn octahedron_refinement(m: usize) -> Vec<Point> {
    let e = |i: usize, s: f64| {
        let mut v = vec![0.0; 3];
        v[i] = s;
        v
    };
    let mut tris: Vec<[Point; 3]> = Vec::new();
    for sx in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            for sz in [-1.0, 1.0] {
                tris.push([e(0, sx), e(1, sy), e(2, sz)]);
            }
        }
    }
    for _ in 1..m {
        let mut next = Vec::with_capacity(tris.len() * 4);
        for [a, b, c] in tris {
            let mid = |p: &Point, q: &Point| linalg::normalize(&linalg::add(p, q)).expect("non-antipodal");
            let (ab, bc, ca) = (mid(&a, &b), mid(&b, &c), mid(&c, &a));
            next.push([a.clone(), ab.clone(), ca.clone()]);
            next.push([ab.clone(), b.clone(), bc.clone()]);
            next.push([ca.clone(), bc.clone(), c.clone()]);
            next.push([ab, bc, ca]);
        }
        tris = next;
    }
    let mut pts: Vec<Point> = tris.into_iter().flat_map(|t| t.into_iter()).collect();
    pts.sort_by(|a, b| linalg::lex_cmp(a, b));
    pts.dedup_by(|a, b| linalg::dist(a, b) < 1e-12);
    pts
}

fn grid_sphere(d: usize, m: usize) -> Vec<Point> {
    let side = 2 * m + 1;
    let total = side.pow(d as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut r = idx;
        let mut p = vec![0.0; d];
        let mut on_boundary = false;
        for c in p.iter_mut() {
            let k = (r % side) as i64 - m as i64;
            r /= side;
            if k.unsigned_abs() as usize == m {
                on_boundary = true;
            }
            *c = k as f64;
        }
        if on_boundary {
            out.push(linalg::normalize(&p).expect("boundary point nonzero"));
        }
    }
    out
}
