use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::geom::faces::FaceLattice;
use crate::geom::hull::convex_hull;
use crate::geom::subspace::Subspace;
use crate::linalg::{self, Point};
use crate::tolerance::geom_eps;

/// Facet of a polytope relative to its affine hull.
///
/// For a full-dimensional polytope `normal` is the outer unit normal in the
/// ambient space and `offset` equals the support function at `normal`.
/// For a lower-dimensional polytope the normal lies in the direction space of
/// the affine hull.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: Point,
    pub offset: f64,
    /// Indices into [`Polytope::vertices`].
    pub vertices: Vec<usize>,
    /// `(dim - 1)`-dimensional volume.
    pub area: f64,
    pub(crate) local_normal: Point,
    pub(crate) local_offset: f64,
}

/// A convex polytope given by its irredundant, lexicographically sorted vertices.
#[derive(Clone, Debug)]
pub struct Polytope {
    ambient: usize,
    vertices: Vec<Point>,
    dim: usize,
    origin: Point,
    basis: Vec<Point>,
    facets: Vec<Facet>,
    rel_volume: f64,
    tol: f64,
    faces: OnceLock<FaceLattice>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}

impl Polytope {
    /// Convex hull of a finite point set.
    pub fn from_points(points: &[Point]) -> Result<Self> {
        let mut current: Vec<Point> = {
            let h = convex_hull(points)?;
            h.vertex_ids.iter().map(|&i| points[i].clone()).collect()
        };
        // Rebuild from the sorted vertex list so the cached data depends only on it.
        for _ in 0..4 {
            current.sort_by(|a, b| linalg::lex_cmp(a, b));
            current.dedup();
            let h = convex_hull(&current)?;
            if h.vertex_ids.len() == current.len() {
                return Ok(Self::assemble(current, h));
            }
            let mut ids = h.vertex_ids.clone();
            ids.sort_unstable();
            current = ids.iter().map(|&i| current[i].clone()).collect();
        }
        let h = convex_hull(&current)?;
        Ok(Self::assemble(current, h))
    }

    fn assemble(vertices: Vec<Point>, h: crate::geom::hull::HullData) -> Self {
        let ambient = vertices[0].len();
        let d = h.dim;
        let ptol = 10.0 * h.tol;
        let facets = h
            .facets
            .iter()
            .map(|f| {
                let verts: Vec<usize> = (0..vertices.len())
                    .filter(|&i| (linalg::dot(&f.normal, &h.local[i]) - f.offset).abs() <= ptol)
                    .collect();
                let area = if d == 1 {
                    1.0
                } else {
                    f.simplices
                        .iter()
                        .map(|s| {
                            let mut rows = vec![f.normal.clone()];
                            for &v in &s[1..] {
                                rows.push(linalg::sub(&h.local[v], &h.local[s[0]]));
                            }
                            linalg::det(&rows).abs()
                        })
                        .sum::<f64>()
                        / linalg::factorial(d - 1)
                };
                let normal = linalg::combine(&f.normal, &h.basis, ambient);
                let offset = f.offset + linalg::dot(&normal, &h.origin);
                Facet {
                    normal,
                    offset,
                    vertices: verts,
                    area,
                    local_normal: f.normal.clone(),
                    local_offset: f.offset,
                }
            })
            .collect();
        Polytope {
            ambient,
            vertices,
            dim: d,
            origin: h.origin,
            basis: h.basis,
            facets,
            rel_volume: h.volume,
            tol: h.tol,
            faces: OnceLock::new(),
        }
    }

    /// The single point `p`.
    pub fn point(p: Point) -> Self {
        Self::from_points(&[p]).expect("single point")
    }

    /// Segment `[a, b]`.
    pub fn segment(a: Point, b: Point) -> Result<Self> {
        Self::from_points(&[a, b])
    }

    /// Axis-parallel box `[lo_1, hi_1] x ... x [lo_n, hi_n]`.
    pub fn cuboid(lo: &[f64], hi: &[f64]) -> Result<Self> {
        let n = lo.len();
        if hi.len() != n {
            return Err(Error::dim(n, hi.len()));
        }
        let pts: Vec<Point> = (0..(1usize << n))
            .map(|mask| {
                (0..n)
                    .map(|i| if mask >> i & 1 == 1 { hi[i] } else { lo[i] })
                    .collect()
            })
            .collect();
        Self::from_points(&pts)
    }

    /// Unit cube `[0,1]^n`.
    pub fn unit_cube(n: usize) -> Self {
        Self::cuboid(&vec![0.0; n], &vec![1.0; n]).expect("valid cube")
    }

    /// `conv{o, e_1, ..., e_n}`.
    pub fn standard_simplex(n: usize) -> Self {
        let mut pts = vec![vec![0.0; n]];
        pts.extend((0..n).map(|i| linalg::unit(n, i)));
        Self::from_points(&pts).expect("valid simplex")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Facets relative to the affine hull (empty for points).
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }

    /// `n`-dimensional volume (zero for lower-dimensional polytopes).
    pub fn volume(&self) -> f64 {
        if self.is_full_dimensional() {
            self.rel_volume
        } else {
            0.0
        }
    }

    /// `dim(P)`-dimensional volume; 1 for a point.
    pub fn relative_volume(&self) -> f64 {
        self.rel_volume
    }

    pub fn support_function(&self, x: &[f64]) -> f64 {
        self.vertices
            .iter()
            .map(|v| linalg::dot(v, x))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Indices of the vertices of the support set `F(P, x)`.
    pub fn support_set(&self, x: &[f64]) -> Vec<usize> {
        let h = self.support_function(x);
        let t = 10.0 * self.tol * linalg::norm(x).max(1.0);
        (0..self.vertices.len())
            .filter(|&i| linalg::dot(&self.vertices[i], x) >= h - t)
            .collect()
    }

    /// Orthonormal basis of the direction space of the affine hull.
    pub fn direction_basis(&self) -> &[Point] {
        &self.basis
    }

    /// Orthonormal basis of the orthogonal complement of the direction space.
    pub fn normal_space(&self) -> Vec<Point> {
        linalg::orthogonal_complement(&self.basis, self.ambient)
    }

    pub(crate) fn frame_origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn to_local(&self, x: &[f64]) -> Point {
        linalg::coords(&linalg::sub(x, &self.origin), &self.basis)
    }

    pub fn from_local(&self, y: &[f64]) -> Point {
        let mut p = self.origin.clone();
        for (c, b) in y.iter().zip(&self.basis) {
            linalg::axpy(&mut p, *c, b);
        }
        p
    }

    /// The polytope expressed in its own affine frame (full-dimensional there).
    pub fn local_polytope(&self) -> Polytope {
        let pts: Vec<Point> = self.vertices.iter().map(|v| self.to_local(v)).collect();
        Polytope::from_points(&pts).expect("nonempty")
    }

    /// Vertex centroid, a point of the relative interior.
    pub fn centroid(&self) -> Point {
        linalg::centroid(&self.vertices)
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        let r = linalg::residual(&linalg::sub(x, &self.origin), &self.basis);
        if linalg::norm(&r) > tol {
            return false;
        }
        let y = self.to_local(x);
        self.facets
            .iter()
            .all(|f| linalg::dot(&f.local_normal, &y) - f.local_offset <= tol)
    }

    /// True if `x` lies in the relative interior, at distance `> tol` from every facet.
    pub fn contains_in_relative_interior(&self, x: &[f64], tol: f64) -> bool {
        let r = linalg::residual(&linalg::sub(x, &self.origin), &self.basis);
        if linalg::norm(&r) > tol {
            return false;
        }
        let y = self.to_local(x);
        self.facets
            .iter()
            .all(|f| linalg::dot(&f.local_normal, &y) - f.local_offset < -tol)
    }

    /// Inequalities `<g, x> <= h` whose solution set is the polytope.
    pub fn halfspaces(&self) -> Vec<(Point, f64)> {
        let mut out: Vec<(Point, f64)> = self.facets.iter().map(|f| (f.normal.clone(), f.offset)).collect();
        for u in self.normal_space() {
            let h = linalg::dot(&u, &self.origin);
            out.push((u.clone(), h));
            out.push((linalg::scale(&u, -1.0), -h));
        }
        out
    }

    pub fn translate(&self, t: &[f64]) -> Polytope {
        let pts: Vec<Point> = self.vertices.iter().map(|v| linalg::add(v, t)).collect();
        Polytope::from_points(&pts).expect("nonempty")
    }

    /// `lambda * P`; `lambda = 0` gives `{o}`.
    pub fn scaled(&self, lambda: f64) -> Polytope {
        let pts: Vec<Point> = self.vertices.iter().map(|v| linalg::scale(v, lambda)).collect();
        Polytope::from_points(&pts).expect("nonempty")
    }

    /// Image under the linear map with the given matrix rows (`x -> M x`).
    pub fn linear_image(&self, rows: &[Point]) -> Polytope {
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| rows.iter().map(|r| linalg::dot(r, v)).collect())
            .collect();
        Polytope::from_points(&pts).expect("nonempty")
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.ambient != other.ambient {
            return Err(Error::dim(self.ambient, other.ambient));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                pts.push(linalg::add(v, w));
            }
        }
        Polytope::from_points(&pts)
    }

    /// Orthogonal projection onto `e`, in the coordinates of its frame.
    pub fn project(&self, e: &Subspace) -> Result<Polytope> {
        if e.ambient_dim() != self.ambient {
            return Err(Error::dim(self.ambient, e.ambient_dim()));
        }
        let pts: Vec<Point> = self.vertices.iter().map(|v| e.pull(v)).collect();
        Polytope::from_points(&pts)
    }

    /// `P ∩ {<g, x> <= h}`; `None` if empty.
    pub fn clip(&self, g: &[f64], h: f64) -> Option<Polytope> {
        let t = self.tol.max(geom_eps()) * linalg::norm(g).max(1.0);
        let vals: Vec<f64> = self.vertices.iter().map(|v| linalg::dot(g, v) - h).collect();
        if vals.iter().all(|s| *s <= t) {
            return Some(self.clone());
        }
        let mut pts: Vec<Point> = Vec::new();
        for (v, s) in self.vertices.iter().zip(&vals) {
            if *s <= t {
                pts.push(v.clone());
            }
        }
        for i in 0..self.vertices.len() {
            for j in 0..self.vertices.len() {
                let (si, sj) = (vals[i], vals[j]);
                if si < -t && sj > t {
                    let lam = si / (si - sj);
                    let p: Point = self.vertices[i]
                        .iter()
                        .zip(&self.vertices[j])
                        .map(|(a, b)| a + lam * (b - a))
                        .collect();
                    pts.push(p);
                }
            }
        }
        if pts.is_empty() {
            return None;
        }
        Polytope::from_points(&pts).ok()
    }

    /// `P ∩ Q`; `None` if empty.
    pub fn intersect(&self, other: &Polytope) -> Result<Option<Polytope>> {
        if self.ambient != other.ambient {
            return Err(Error::dim(self.ambient, other.ambient));
        }
        let mut cur = self.clone();
        for (g, h) in other.halfspaces() {
            match cur.clip(&g, h) {
                Some(p) => cur = p,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// Face lattice, computed on first use.
    pub fn faces(&self) -> &FaceLattice {
        self.faces.get_or_init(|| FaceLattice::build(self))
    }

    /// Vertex-wise comparison within `tol`.
    pub fn approx_eq(&self, other: &Polytope, tol: f64) -> bool {
        self.ambient == other.ambient
            && self.vertices.len() == other.vertices.len()
            && self.vertices.iter().all(|v| other.vertices.iter().any(|w| linalg::dist(v, w) <= tol))
    }

    /// Sub-polytope spanned by a subset of the vertices.
    pub fn sub_polytope(&self, ids: &[usize]) -> Polytope {
        let pts: Vec<Point> = ids.iter().map(|&i| self.vertices[i].clone()).collect();
        Polytope::from_points(&pts).expect("nonempty")
    }
}

/// Convex hull of a point set.
pub fn hull(points: &[Point]) -> Result<Polytope> {
    Polytope::from_points(points)
}

pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    p.minkowski_sum(q)
}

/// `sum_i c_i K_i` for nonnegative integer-like coefficients `c_i`; zero terms are skipped.
pub fn minkowski_combination(bodies: &[&Polytope], coeffs: &[f64]) -> Result<Polytope> {
    let n = bodies.first().ok_or(Error::EmptyPointSet)?.ambient_dim();
    let mut acc: Option<Polytope> = None;
    for (k, c) in bodies.iter().zip(coeffs) {
        if *c == 0.0 {
            continue;
        }
        let term = if *c == 1.0 { (*k).clone() } else { k.scaled(*c) };
        acc = Some(match acc {
            None => term,
            Some(a) => a.minkowski_sum(&term)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Polytope::point(vec![0.0; n])))
}

pub fn volume(p: &Polytope) -> f64 {
    p.volume()
}

pub fn support_function(p: &Polytope, x: &[f64]) -> f64 {
    p.support_function(x)
}

pub fn project(p: &Polytope, e: &Subspace) -> Result<Polytope> {
    p.project(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[f64]]) -> Vec<Point> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn triangle_drops_interior_point() {
        let p = hull(&pts(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[0.2, 0.2]])).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn single_point_is_zero_dimensional() {
        let p = hull(&pts(&[&[0.0, 0.0, 0.0]])).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.volume(), 0.0);
        assert_eq!(p.relative_volume(), 1.0);
    }

    #[test]
    fn minkowski_triangle_plus_segment() {
        let t = hull(&pts(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]])).unwrap();
        let s = hull(&pts(&[&[0.0, 0.0], &[0.0, 1.0]])).unwrap();
        let q = t.minkowski_sum(&s).unwrap();
        let expect = hull(&pts(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 2.0]])).unwrap();
        assert_eq!(q, expect);
        assert_eq!(q.vertices().len(), 4);
    }

    #[test]
    fn volumes_of_cube_and_simplex() {
        assert!((Polytope::unit_cube(3).volume() - 1.0).abs() < 1e-12);
        assert!((Polytope::standard_simplex(3).volume() - 1.0 / 6.0).abs() < 1e-12);
        assert!((Polytope::unit_cube(4).volume() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn facet_normals_and_offsets_of_cube() {
        let c = Polytope::unit_cube(3);
        assert_eq!(c.facets().len(), 6);
        for f in c.facets() {
            assert!((linalg::norm(&f.normal) - 1.0).abs() < 1e-12);
            assert!((f.offset - c.support_function(&f.normal)).abs() < 1e-12);
            assert!((f.area - 1.0).abs() < 1e-12);
            assert_eq!(f.vertices.len(), 4);
        }
    }

    #[test]
    fn clipping_halves_square() {
        let sq = Polytope::unit_cube(2);
        let h = sq.clip(&[1.0, 0.0], 0.5).unwrap();
        assert!((h.volume() - 0.5).abs() < 1e-12);
        assert!(sq.clip(&[1.0, 0.0], -1.0).is_none());
    }

    #[test]
    fn intersection_with_lower_dimensional_polytope() {
        let sq = Polytope::cuboid(&[-1.0, -1.0], &[1.0, 1.0]).unwrap();
        let seg = Polytope::segment(vec![0.0, -3.0], vec![0.0, 3.0]).unwrap();
        let i = sq.intersect(&seg).unwrap().unwrap();
        assert_eq!(i.dim(), 1);
        assert!((i.relative_volume() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn contains_respects_affine_hull() {
        let seg = Polytope::segment(vec![0.0, 0.0], vec![1.0, 0.0]).unwrap();
        assert!(seg.contains(&[0.5, 0.0], 1e-9));
        assert!(!seg.contains(&[0.5, 0.1], 1e-9));
        assert!(!seg.contains(&[1.5, 0.0], 1e-9));
    }
}
