//! Piecewise-linear convex functions `x ↦ max_i(<a_i, x> - b_i) + I_D(x)`.

use crate::error::{Error, Result};
use crate::geom::{vertices_from_halfspaces, Polytope, Subspace};
use crate::linalg::{self, Point};
use crate::tolerance::geom_eps;

use super::lifted::lower_hull;

/// Hard limit on the number of candidate pieces when adding functions.
pub const PIECE_BUDGET: usize = 100_000;

/// The affine function `x ↦ <a, x> - b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub a: Point,
    pub b: f64,
}

impl Piece {
    pub fn new(a: Point, b: f64) -> Self {
        Piece { a, b }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        linalg::dot(&self.a, x) - self.b
    }
}

/// A piecewise-linear convex function, finite on `domain` (everywhere if `None`).
///
/// Every piece is maximal on a set of full dimension in the domain; pieces of
/// a function with a domain have gradients in the direction space of the
/// domain.
#[derive(Clone, Debug, PartialEq)]
pub struct PLConvexFunction {
    dim: usize,
    pieces: Vec<Piece>,
    domain: Option<Polytope>,
}

/// `tol` scaled to the magnitude of a piece value at `x`.
fn activity_tol(p: &Piece, x: &[f64]) -> f64 {
    1e-9 * (1.0 + linalg::norm(&p.a) * linalg::norm(x) + p.b.abs())
}

impl PLConvexFunction {
    /// Validates and prunes redundant pieces.
    pub fn new(dim: usize, pieces: Vec<Piece>, domain: Option<Polytope>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidArgument("a PL function needs at least one piece".into()));
        }
        for p in &pieces {
            if p.a.len() != dim {
                return Err(Error::dim(dim, p.a.len()));
            }
            if !p.b.is_finite() || p.a.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidArgument("piece coefficients must be finite".into()));
            }
        }
        if let Some(d) = &domain {
            if d.ambient_dim() != dim {
                return Err(Error::dim(dim, d.ambient_dim()));
            }
        }
        let f = PLConvexFunction { dim, pieces, domain };
        f.pruned()
    }

    pub fn affine(a: Point, b: f64) -> Self {
        PLConvexFunction {
            dim: a.len(),
            pieces: vec![Piece::new(a, b)],
            domain: None,
        }
    }

    /// `h_P(x) = max_v <v, x>`.
    pub fn support_function(p: &Polytope) -> Self {
        let pieces = p.vertices().iter().map(|v| Piece::new(v.clone(), 0.0)).collect();
        Self::new(p.ambient_dim(), pieces, None).expect("vertices give valid pieces")
    }

    /// `I_K`: zero on `K`, `+∞` elsewhere.
    pub fn indicator(k: &Polytope) -> Self {
        Self::new(k.ambient_dim(), vec![Piece::new(vec![0.0; k.ambient_dim()], 0.0)], Some(k.clone()))
            .expect("indicator is valid")
    }

    /// `‖x‖_∞ = max_i ±x_i`.
    pub fn norm_inf(n: usize) -> Self {
        let mut pieces = Vec::new();
        for i in 0..n {
            pieces.push(Piece::new(linalg::unit(n, i), 0.0));
            pieces.push(Piece::new(linalg::scale(&linalg::unit(n, i), -1.0), 0.0));
        }
        Self::new(n, pieces, None).expect("valid")
    }

    /// `‖x‖_1 = max over sign vectors s of <s, x>`.
    pub fn norm_one(n: usize) -> Self {
        let pieces = (0..1usize << n)
            .map(|m| Piece::new((0..n).map(|i| if m >> i & 1 == 1 { 1.0 } else { -1.0 }).collect(), 0.0))
            .collect();
        Self::new(n, pieces, None).expect("valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn domain(&self) -> Option<&Polytope> {
        self.domain.as_ref()
    }

    pub fn is_finite(&self) -> bool {
        self.domain.is_none()
    }

    /// Value of the maximal piece, ignoring the domain.
    pub(crate) fn max_piece(&self, x: &[f64]) -> f64 {
        self.pieces.iter().map(|p| p.eval(x)).fold(f64::NEG_INFINITY, f64::max)
    }

    fn domain_tol(x: &[f64]) -> f64 {
        1e2 * geom_eps() * linalg::norm(x).max(1.0)
    }

    /// `f(x)`, `+∞` outside the domain.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        if let Some(d) = &self.domain {
            if !d.contains(x, Self::domain_tol(x)) {
                return f64::INFINITY;
            }
        }
        self.max_piece(x)
    }

    /// Indices of the pieces attaining the maximum at `x` within tolerance.
    pub fn active_pieces(&self, x: &[f64]) -> Vec<usize> {
        let m = self.max_piece(x);
        (0..self.pieces.len())
            .filter(|&i| m - self.pieces[i].eval(x) <= activity_tol(&self.pieces[i], x))
            .collect()
    }

    /// Projects gradients onto the direction space of the domain, keeping the
    /// function unchanged on the affine hull of the domain.
    fn canonical_pieces(&self) -> Vec<Piece> {
        let Some(d) = self.domain.as_ref().filter(|d| d.dim() < self.dim) else {
            return self.pieces.clone();
        };
        let basis = d.direction_basis();
        let origin = d.frame_origin();
        self.pieces
            .iter()
            .map(|p| {
                let a = linalg::combine(&linalg::coords(&p.a, basis), basis, self.dim);
                let b = p.b - linalg::dot(&linalg::sub(&p.a, &a), origin);
                Piece::new(a, b)
            })
            .collect()
    }

    /// Drops pieces equal in slope to an earlier one, keeping the larger function.
    fn dedup(pieces: Vec<Piece>) -> Vec<Piece> {
        let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            let scale = linalg::norm(&p.a).max(1.0);
            match out.iter_mut().find(|q| linalg::dist(&q.a, &p.a) <= 1e-12 * scale) {
                Some(q) => {
                    if p.b < q.b {
                        q.b = p.b;
                    }
                }
                None => out.push(p),
            }
        }
        out
    }

    fn pruned(self) -> Result<Self> {
        let pieces = Self::dedup(self.canonical_pieces());
        let keep: Vec<usize> = match &self.domain {
            None => {
                let a: Vec<Point> = pieces.iter().map(|p| p.a.clone()).collect();
                let b: Vec<f64> = pieces.iter().map(|p| p.b).collect();
                lower_hull(&a, &b)?.vertices
            }
            Some(d) => {
                let tmp = PLConvexFunction {
                    dim: self.dim,
                    pieces: pieces.clone(),
                    domain: Some(d.clone()),
                };
                let verts = tmp.complex_vertices()?;
                let k = d.dim();
                let keep: Vec<usize> = (0..pieces.len())
                    .filter(|&i| {
                        let act: Vec<&Point> = verts
                            .iter()
                            .filter(|(p, v)| v - pieces[i].eval(p) <= activity_tol(&pieces[i], p))
                            .map(|(p, _)| p)
                            .collect();
                        if act.len() < k + 1 {
                            return false;
                        }
                        let diffs: Vec<Point> = act[1..].iter().map(|p| linalg::sub(p, act[0])).collect();
                        linalg::rank(&diffs, self.dim) == k
                    })
                    .collect();
                if keep.is_empty() {
                    // a point domain: the maximal constant
                    let best = (0..pieces.len())
                        .max_by(|&i, &j| pieces[i].eval(&verts[0].0).total_cmp(&pieces[j].eval(&verts[0].0)))
                        .expect("nonempty");
                    vec![best]
                } else {
                    keep
                }
            }
        };
        Ok(PLConvexFunction {
            dim: self.dim,
            pieces: keep.into_iter().map(|i| pieces[i].clone()).collect(),
            domain: self.domain,
        })
    }

    /// Vertices `p` of the complex of a function with domain, with values `u(p)`.
    ///
    /// They are the lower vertices of `{(y, t) : t >= u(y), y ∈ D, t <= T}`
    /// in the affine frame of `D`, found by vertex enumeration.
    pub fn complex_vertices(&self) -> Result<Vec<(Point, f64)>> {
        let d = self.domain.as_ref().ok_or(Error::NotCoercive("complex vertices need a domain".into()))?;
        let k = d.dim();
        if k == 0 {
            let p = d.vertices()[0].clone();
            let v = self.max_piece(&p);
            return Ok(vec![(p, v)]);
        }
        let basis = d.direction_basis();
        let origin = d.frame_origin();
        let mut cons: Vec<(Point, f64)> = Vec::new();
        for p in &self.pieces {
            let mut g = linalg::coords(&p.a, basis);
            g.push(-1.0);
            cons.push((g, p.b - linalg::dot(&p.a, origin)));
        }
        for f in d.facets() {
            let mut g = f.local_normal.clone();
            g.push(0.0);
            cons.push((g, f.local_offset));
        }
        let top = d.vertices().iter().map(|v| self.max_piece(v)).fold(f64::NEG_INFINITY, f64::max) + 2.0;
        let mut up = vec![0.0; k];
        up.push(1.0);
        cons.push((up, top));
        let c = d.centroid();
        let mut interior = d.to_local(&c);
        interior.push(self.max_piece(&c) + 1.0);
        let verts = vertices_from_halfspaces(&cons, &interior)?;
        let mut out: Vec<(Point, f64)> = verts
            .into_iter()
            .filter(|y| y[k] < top - 0.5)
            .map(|y| {
                let p = d.from_local(&y[..k]);
                let v = self.max_piece(&p);
                (p, v)
            })
            .collect();
        out.sort_by(|x, y| linalg::lex_cmp(&x.0, &y.0));
        Ok(out)
    }

    /// Largest value on the domain (attained at a vertex of the domain).
    pub fn max_on_domain(&self) -> Result<f64> {
        let d = self.domain.as_ref().ok_or(Error::NotCoercive("unbounded domain".into()))?;
        Ok(d.vertices().iter().map(|v| self.max_piece(v)).fold(f64::NEG_INFINITY, f64::max))
    }

    /// Legendre–Fenchel conjugate.
    pub fn legendre(&self) -> Result<Self> {
        match &self.domain {
            None => {
                let a: Vec<Point> = self.pieces.iter().map(|p| p.a.clone()).collect();
                let b: Vec<f64> = self.pieces.iter().map(|p| p.b).collect();
                let lh = lower_hull(&a, &b)?;
                let pieces = lh.facets.iter().map(|f| Piece::new(f.slope.clone(), f.offset)).collect();
                Ok(PLConvexFunction {
                    dim: self.dim,
                    pieces,
                    domain: Some(lh.hull),
                })
            }
            Some(_) => {
                let pieces = self
                    .complex_vertices()?
                    .into_iter()
                    .map(|(p, v)| Piece::new(p, v))
                    .collect();
                Self::new(self.dim, pieces, None)
            }
        }
    }

    /// Pointwise sum; domains intersect.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::dim(self.dim, other.dim));
        }
        let count = self.pieces.len() * other.pieces.len();
        if count > PIECE_BUDGET {
            return Err(Error::PieceBudget {
                count,
                limit: PIECE_BUDGET,
            });
        }
        let domain = match (&self.domain, &other.domain) {
            (None, None) => None,
            (Some(d), None) | (None, Some(d)) => Some(d.clone()),
            (Some(d1), Some(d2)) => Some(d1.intersect(d2)?.ok_or(Error::EmptyRestriction)?),
        };
        let mut pieces = Vec::with_capacity(count);
        for p in &self.pieces {
            for q in &other.pieces {
                pieces.push(Piece::new(linalg::add(&p.a, &q.a), p.b + q.b));
            }
        }
        Self::new(self.dim, pieces, domain)
    }

    /// Pointwise sum of several functions.
    pub fn sum(fs: &[&Self]) -> Result<Self> {
        let (first, rest) = fs.split_first().ok_or(Error::Arity { expected: 1, found: 0 })?;
        let mut acc = (*first).clone();
        for f in rest {
            acc = acc.add(f)?;
        }
        Ok(acc)
    }

    /// Pointwise multiple `λ f`, `λ >= 0`.
    pub fn scale(&self, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!("scale factor must be nonnegative, got {lambda}")));
        }
        if lambda == 0.0 {
            return Ok(PLConvexFunction {
                dim: self.dim,
                pieces: vec![Piece::new(vec![0.0; self.dim], 0.0)],
                domain: self.domain.clone(),
            });
        }
        Ok(PLConvexFunction {
            dim: self.dim,
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece::new(linalg::scale(&p.a, lambda), lambda * p.b))
                .collect(),
            domain: self.domain.clone(),
        })
    }

    /// Epi-multiplication `λ ⊡ f = λ f(· / λ)`; `0 ⊡ f = I_{o}`.
    pub fn epi_scale(&self, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!("epi-multiplication needs λ >= 0, got {lambda}")));
        }
        if lambda == 0.0 {
            return Ok(Self::indicator(&Polytope::point(vec![0.0; self.dim])));
        }
        Ok(PLConvexFunction {
            dim: self.dim,
            pieces: self.pieces.iter().map(|p| Piece::new(p.a.clone(), lambda * p.b)).collect(),
            domain: self.domain.as_ref().map(|d| d.scaled(lambda)),
        })
    }

    /// Infimal convolution `f ⊞ g = (f* + g*)*`.
    pub fn inf_convolution(&self, other: &Self) -> Result<Self> {
        self.legendre()?.add(&other.legendre()?)?.legendre()
    }

    /// Restriction to the subspace `e`, in its frame coordinates.
    pub fn restrict(&self, e: &Subspace) -> Result<Self> {
        if e.ambient_dim() != self.dim {
            return Err(Error::dim(self.dim, e.ambient_dim()));
        }
        let pieces = self.pieces.iter().map(|p| Piece::new(e.pull(&p.a), p.b)).collect();
        let domain = match &self.domain {
            None => None,
            Some(d) => {
                let mut cur = d.clone();
                for g in e.orthogonal_complement().frame() {
                    cur = cur.clip(g, 0.0).ok_or(Error::EmptyRestriction)?;
                    cur = cur.clip(&linalg::scale(g, -1.0), 0.0).ok_or(Error::EmptyRestriction)?;
                }
                let pts: Vec<Point> = cur.vertices().iter().map(|v| e.pull(v)).collect();
                Some(Polytope::from_points(&pts)?)
            }
        };
        Self::new(e.dim(), pieces, domain)
    }

    /// `proj_E f(x) = min_{y ⊥ E} f(x + y)`, computed as `(f*|_E)*`.
    pub fn project(&self, e: &Subspace) -> Result<Self> {
        self.legendre()?.restrict(e)?.legendre()
    }

    /// `∂f(x)` at a point of the interior of the domain.
    pub fn subdifferential(&self, x: &[f64]) -> Result<Polytope> {
        if x.len() != self.dim {
            return Err(Error::dim(self.dim, x.len()));
        }
        if let Some(d) = &self.domain {
            if !d.is_full_dimensional() || !d.contains_in_relative_interior(x, Self::domain_tol(x)) {
                return Err(Error::OutsideDomainInterior(x.to_vec()));
            }
        }
        let grads: Vec<Point> = self.active_pieces(x).into_iter().map(|i| self.pieces[i].a.clone()).collect();
        Polytope::from_points(&grads)
    }
}

/// `f*`.
pub fn legendre(f: &PLConvexFunction) -> Result<PLConvexFunction> {
    f.legendre()
}

/// `f ⊞ g`.
pub fn inf_convolution(f: &PLConvexFunction, g: &PLConvexFunction) -> Result<PLConvexFunction> {
    f.inf_convolution(g)
}

/// `λ ⊡ f`.
pub fn epi_scale(lambda: f64, f: &PLConvexFunction) -> Result<PLConvexFunction> {
    f.epi_scale(lambda)
}

/// `f|_E`.
pub fn restrict(f: &PLConvexFunction, e: &Subspace) -> Result<PLConvexFunction> {
    f.restrict(e)
}

/// `proj_E f`.
pub fn project_fn(f: &PLConvexFunction, e: &Subspace) -> Result<PLConvexFunction> {
    f.project(e)
}

/// `∂f(x)`.
pub fn subdifferential(f: &PLConvexFunction, x: &[f64]) -> Result<Polytope> {
    f.subdifferential(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abs1() -> PLConvexFunction {
        PLConvexFunction::new(1, vec![Piece::new(vec![1.0], 0.0), Piece::new(vec![-1.0], 0.0)], None).unwrap()
    }

    fn seg(lo: f64, hi: f64) -> Polytope {
        Polytope::segment(vec![lo], vec![hi]).unwrap()
    }

    #[test]
    fn evaluation() {
        assert_eq!(abs1().evaluate(&[3.0]), 3.0);
        let h = PLConvexFunction::support_function(&Polytope::unit_cube(2));
        assert_eq!(h.evaluate(&[1.0, 2.0]), 3.0);
        let ind = PLConvexFunction::indicator(&seg(0.0, 1.0));
        assert_eq!(ind.evaluate(&[2.0]), f64::INFINITY);
        assert_eq!(ind.evaluate(&[0.5]), 0.0);
    }

    #[test]
    fn support_function_of_cube_is_pruned_to_vertices() {
        let h = PLConvexFunction::support_function(&Polytope::unit_cube(3));
        assert_eq!(h.pieces().len(), 8);
        let redundant = PLConvexFunction::new(
            1,
            vec![Piece::new(vec![1.0], 0.0), Piece::new(vec![-1.0], 0.0), Piece::new(vec![0.0], 1.0)],
            None,
        )
        .unwrap();
        assert_eq!(redundant.pieces().len(), 2);
    }

    #[test]
    fn abs_conjugates_to_indicator() {
        let c = abs1().legendre().unwrap();
        let d = c.domain().unwrap();
        assert!((d.vertices()[0][0] + 1.0).abs() < 1e-12 && (d.vertices()[1][0] - 1.0).abs() < 1e-12);
        assert_eq!(c.pieces().len(), 1);
        assert!(c.evaluate(&[0.3]).abs() < 1e-12);
        let back = c.legendre().unwrap();
        for x in [-2.0, -0.1, 0.0, 0.7, 5.0] {
            assert!((back.evaluate(&[x]) - f64::abs(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn support_function_conjugates_to_indicator() {
        let cube = Polytope::unit_cube(2);
        let c = PLConvexFunction::support_function(&cube).legendre().unwrap();
        assert!(c.domain().unwrap().approx_eq(&cube, 1e-12));
        assert!(c.evaluate(&[0.3, 0.9]).abs() < 1e-12);
    }

    #[test]
    fn epi_operations() {
        let ind = PLConvexFunction::indicator(&seg(0.0, 1.0));
        let twice = ind.epi_scale(2.0).unwrap();
        assert!(twice.domain().unwrap().approx_eq(&seg(0.0, 2.0), 1e-12));
        let zero = abs1().epi_scale(0.0).unwrap();
        assert_eq!(zero.domain().unwrap().dim(), 0);
        assert!(abs1().epi_scale(-1.0).is_err());
        let sum = ind.inf_convolution(&PLConvexFunction::indicator(&seg(-1.0, 0.5))).unwrap();
        assert!(sum.domain().unwrap().approx_eq(&seg(-1.0, 1.5), 1e-9));
    }

    #[test]
    fn abs_inf_convolved_with_itself() {
        let s = abs1().inf_convolution(&abs1()).unwrap();
        for x in [-3.0, -0.5, 0.0, 0.25, 2.0] {
            assert!((s.evaluate(&[x]) - f64::abs(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn restriction_and_projection() {
        let h = PLConvexFunction::support_function(&Polytope::unit_cube(3));
        let e = Subspace::coordinate(3, &[0, 1]);
        let r = h.restrict(&e).unwrap();
        let sq = PLConvexFunction::support_function(&Polytope::unit_cube(2));
        for x in [[0.3, -1.0], [2.0, 0.5], [-1.0, -1.0]] {
            assert!((r.evaluate(&x) - sq.evaluate(&x)).abs() < 1e-12);
        }
        // |x| + |y| projected onto the first axis is |x|
        let l1 = PLConvexFunction::norm_one(2);
        let p = l1.project(&Subspace::coordinate(2, &[0])).unwrap();
        for x in [-2.0, 0.0, 0.4] {
            assert!((p.evaluate(&[x]) - f64::abs(x)).abs() < 1e-12);
        }
        let ind = PLConvexFunction::indicator(&Polytope::unit_cube(2));
        let pi = ind.project(&Subspace::coordinate(2, &[0])).unwrap();
        assert!(pi.domain().unwrap().approx_eq(&seg(0.0, 1.0), 1e-12));
    }

    #[test]
    fn subdifferentials() {
        let s = abs1().subdifferential(&[0.0]).unwrap();
        assert!(s.approx_eq(&seg(-1.0, 1.0), 1e-12));
        let ind = PLConvexFunction::indicator(&seg(0.0, 1.0));
        assert!(matches!(ind.subdifferential(&[1.0]), Err(Error::OutsideDomainInterior(_))));
    }

    #[test]
    fn complex_vertices_of_abs_on_interval() {
        let f = abs1().add(&PLConvexFunction::indicator(&seg(-1.0, 2.0))).unwrap();
        let v = f.complex_vertices().unwrap();
        let xs: Vec<f64> = v.iter().map(|(p, _)| p[0]).collect();
        assert_eq!(xs.len(), 3);
        assert!((xs[0] + 1.0).abs() < 1e-12 && xs[1].abs() < 1e-12 && (xs[2] - 2.0).abs() < 1e-12);
    }
}
