//! Small dense linear-algebra helpers on `Vec<f64>` points.

use std::cmp::Ordering;

use nalgebra::DMatrix;

use crate::tolerance::{geom_eps, RANK_REL_TOL};

pub type Point = Vec<f64>;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn sub(a: &[f64], b: &[f64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[inline]
pub fn add(a: &[f64], b: &[f64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[inline]
pub fn scale(a: &[f64], s: f64) -> Point {
    a.iter().map(|x| x * s).collect()
}

/// `y += s * x`
#[inline]
pub fn axpy(y: &mut [f64], s: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += s * xi;
    }
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn normalize(a: &[f64]) -> Option<Point> {
    let l = norm(a);
    (l > 0.0 && l.is_finite()).then(|| scale(a, 1.0 / l))
}

pub fn unit(n: usize, i: usize) -> Point {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

pub fn centroid(points: &[Point]) -> Point {
    let n = points[0].len();
    let mut c = vec![0.0; n];
    for p in points {
        axpy(&mut c, 1.0, p);
    }
    scale(&c, 1.0 / points.len() as f64)
}

/// Lexicographic order with a total order on floats.
pub fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

fn to_matrix(rows: &[Point], ncols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j])
}

/// Determinant of a square matrix given by rows.
pub fn det(rows: &[Point]) -> f64 {
    let n = rows.len();
    match n {
        0 => 1.0,
        1 => rows[0][0],
        2 => rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        3 => {
            let (a, b, c) = (&rows[0], &rows[1], &rows[2]);
            a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0])
        }
        _ => to_matrix(rows, n).determinant(),
    }
}

/// Vector orthogonal to the `d-1` given vectors in `R^d` (generalized cross product).
pub fn cofactor_normal(edges: &[Point], d: usize) -> Point {
    debug_assert_eq!(edges.len() + 1, d);
    let mut out = vec![0.0; d];
    let mut minor: Vec<Point> = vec![vec![0.0; d - 1]; d - 1];
    for (k, o) in out.iter_mut().enumerate() {
        for (r, e) in edges.iter().enumerate() {
            let mut c = 0;
            for (j, v) in e.iter().enumerate() {
                if j != k {
                    minor[r][c] = *v;
                    c += 1;
                }
            }
        }
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        *o = s * det(&minor);
    }
    out
}

fn singular_threshold(max_sv: f64) -> f64 {
    (RANK_REL_TOL * max_sv).max(geom_eps())
}

/// Numerical rank of a set of vectors in `R^dim`.
pub fn rank(vectors: &[Point], dim: usize) -> usize {
    if vectors.is_empty() || dim == 0 {
        return 0;
    }
    let m = to_matrix(vectors, dim);
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let thr = singular_threshold(max);
    sv.iter().filter(|s| **s > thr).count()
}

/// Orthonormal basis of the linear span of `vectors` in `R^dim`.
pub fn orthonormal_span(vectors: &[Point], dim: usize) -> Vec<Point> {
    if vectors.is_empty() || dim == 0 {
        return Vec::new();
    }
    // columns are the vectors
    let m = DMatrix::from_fn(dim, vectors.len(), |i, j| vectors[j][i]);
    let svd = m.svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let thr = singular_threshold(max);
    let mut out = Vec::new();
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s > thr {
            out.push(u.column(k).iter().cloned().collect());
        }
    }
    out
}

/// Orthonormal completion: basis of the orthogonal complement of an orthonormal set.
pub fn orthogonal_complement(basis: &[Point], dim: usize) -> Vec<Point> {
    let mut current: Vec<Point> = basis.to_vec();
    let mut out = Vec::new();
    while current.len() < dim {
        let mut best: Option<(f64, Point)> = None;
        for i in 0..dim {
            let r = residual(&unit(dim, i), &current);
            let l = norm(&r);
            if best.as_ref().is_none_or(|(bl, _)| l > *bl) {
                best = Some((l, r));
            }
        }
        let (l, r) = best.expect("dim > 0");
        let v = residual(&scale(&r, 1.0 / l), &current);
        let v = normalize(&v).expect("nonzero residual");
        current.push(v.clone());
        out.push(v);
    }
    out
}

/// Component of `x` orthogonal to the orthonormal set `basis`.
pub fn residual(x: &[f64], basis: &[Point]) -> Point {
    let mut r = x.to_vec();
    for b in basis {
        let c = dot(&r, b);
        axpy(&mut r, -c, b);
    }
    r
}

/// Coordinates of `x` with respect to the orthonormal set `basis`.
pub fn coords(x: &[f64], basis: &[Point]) -> Point {
    basis.iter().map(|b| dot(x, b)).collect()
}

/// `sum_i c_i basis_i` in `R^dim`.
pub fn combine(c: &[f64], basis: &[Point], dim: usize) -> Point {
    let mut out = vec![0.0; dim];
    for (ci, b) in c.iter().zip(basis) {
        axpy(&mut out, *ci, b);
    }
    out
}

/// Solves `A x = b` for square `A` (rows). `None` if singular.
pub fn solve(a: &[Point], b: &[f64]) -> Option<Point> {
    let n = a.len();
    let m = to_matrix(a, n);
    let rhs = nalgebra::DVector::from_column_slice(b);
    m.lu().solve(&rhs).map(|x| x.iter().cloned().collect())
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r.round()
}

/// Volume of the unit ball in `R^j`.
pub fn kappa(j: usize) -> f64 {
    match j {
        0 => 1.0,
        1 => 2.0,
        _ => kappa(j - 2) * 2.0 * std::f64::consts::PI / j as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ball_volumes() {
        assert!((kappa(2) - PI).abs() < 1e-15);
        assert!((kappa(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((kappa(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(3, 0), 1.0);
        assert_eq!(binomial(2, 3), 0.0);
        assert_eq!(factorial(4), 24.0);
    }

    #[test]
    fn cofactor_normal_is_orthogonal() {
        let e = vec![vec![1.0, 2.0, 0.5, 0.0], vec![0.0, 1.0, 1.0, 3.0], vec![2.0, 0.0, 1.0, 1.0]];
        let n = cofactor_normal(&e, 4);
        for v in &e {
            assert!(dot(&n, v).abs() < 1e-12);
        }
        assert!(norm(&n) > 0.1);
    }

    #[test]
    fn complement_completes_basis() {
        let b = orthonormal_span(&[vec![1.0, 1.0, 0.0]], 3);
        let c = orthogonal_complement(&b, 3);
        assert_eq!(c.len(), 2);
        for u in &c {
            assert!(dot(u, &b[0]).abs() < 1e-12);
            assert!((norm(u) - 1.0).abs() < 1e-12);
        }
        assert!(dot(&c[0], &c[1]).abs() < 1e-12);
    }

    #[test]
    fn rank_detects_dependence() {
        let v = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![1.0, 1.0, 0.0]];
        assert_eq!(rank(&v, 3), 2);
        assert_eq!(rank(&[], 3), 0);
    }
}
