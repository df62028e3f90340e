use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Point};
use crate::tolerance::geom_eps;

/// A linear subspace given by an orthonormal frame.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Subspace {
    #[serde(rename = "dim")]
    ambient: usize,
    frame: Vec<Point>,
}

impl Subspace {
    /// Validates that `frame` is orthonormal in `R^ambient`.
    pub fn new(ambient: usize, frame: Vec<Point>) -> Result<Self> {
        for f in &frame {
            if f.len() != ambient {
                return Err(Error::dim(ambient, f.len()));
            }
        }
        let tol = 1e3 * geom_eps();
        for (i, a) in frame.iter().enumerate() {
            for (j, b) in frame.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                if (linalg::dot(a, b) - want).abs() > tol {
                    return Err(Error::InvalidArgument("frame is not orthonormal".into()));
                }
            }
        }
        if frame.len() > ambient {
            return Err(Error::InvalidArgument("frame has too many vectors".into()));
        }
        Ok(Subspace { ambient, frame })
    }

    /// Span of arbitrary vectors, orthonormalized.
    pub fn span(ambient: usize, vectors: &[Point]) -> Self {
        Subspace {
            ambient,
            frame: linalg::orthonormal_span(vectors, ambient),
        }
    }

    /// Span of vectors orthonormalized in the given order (Gram-Schmidt).
    ///
    /// Vectors dependent on earlier ones are skipped.
    pub fn span_ordered(ambient: usize, vectors: &[Point]) -> Self {
        let mut frame: Vec<Point> = Vec::new();
        for v in vectors {
            let r = linalg::residual(v, &frame);
            let r = linalg::residual(&r, &frame);
            if linalg::norm(&r) > 1e3 * geom_eps() * linalg::norm(v).max(1.0) {
                frame.push(linalg::normalize(&r).expect("nonzero"));
            }
        }
        Subspace { ambient, frame }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            ambient: n,
            frame: (0..n).map(|i| linalg::unit(n, i)).collect(),
        }
    }

    /// `lin{e_i : i in axes}`.
    pub fn coordinate(n: usize, axes: &[usize]) -> Self {
        Subspace {
            ambient: n,
            frame: axes.iter().map(|&i| linalg::unit(n, i)).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    pub fn frame(&self) -> &[Point] {
        &self.frame
    }

    /// Frame coordinates to ambient point.
    pub fn push(&self, y: &[f64]) -> Point {
        linalg::combine(y, &self.frame, self.ambient)
    }

    /// Ambient point to frame coordinates of its orthogonal projection.
    pub fn pull(&self, x: &[f64]) -> Point {
        linalg::coords(x, &self.frame)
    }

    /// Orthogonal projection onto the subspace, in ambient coordinates.
    pub fn project_point(&self, x: &[f64]) -> Point {
        self.push(&self.pull(x))
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        linalg::norm(&linalg::residual(x, &self.frame)) <= tol
    }

    pub fn orthogonal_complement(&self) -> Subspace {
        Subspace {
            ambient: self.ambient,
            frame: linalg::orthogonal_complement(&self.frame, self.ambient),
        }
    }

    /// True if `self ⊆ other` within `tol`.
    pub fn is_subspace_of(&self, other: &Subspace, tol: f64) -> bool {
        self.frame.iter().all(|f| other.contains(f, tol))
    }

    /// Subspace of `self` expressed in the frame coordinates of `outer ⊇ self`.
    pub fn relative_to(&self, outer: &Subspace) -> Subspace {
        let frame = self.frame.iter().map(|f| outer.pull(f)).collect();
        Subspace {
            ambient: outer.dim(),
            frame,
        }
    }

    /// Subspace of `outer`'s coordinate space mapped to the ambient space of `outer`.
    pub fn embed_in(&self, outer: &Subspace) -> Subspace {
        let frame = self.frame.iter().map(|f| outer.push(f)).collect();
        Subspace {
            ambient: outer.ambient,
            frame,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_pull_roundtrip() {
        let e = Subspace::span(3, &[vec![1.0, 1.0, 0.0], vec![0.0, 1.0, 1.0]]);
        assert_eq!(e.dim(), 2);
        let x = e.push(&[0.3, -1.2]);
        let y = e.pull(&x);
        assert!((y[0] - 0.3).abs() < 1e-12 && (y[1] + 1.2).abs() < 1e-12);
        assert!(e.contains(&x, 1e-12));
    }

    #[test]
    fn rejects_non_orthonormal_frame() {
        assert!(Subspace::new(2, vec![vec![1.0, 0.0], vec![1.0, 1.0]]).is_err());
        assert!(Subspace::new(2, vec![vec![0.0, 1.0]]).is_ok());
    }

    #[test]
    fn ordered_span_keeps_first_direction() {
        let e = Subspace::span_ordered(3, &[vec![0.0, 0.0, 2.0], vec![1.0, 0.0, 1.0]]);
        assert_eq!(e.frame()[0], vec![0.0, 0.0, 1.0]);
        assert_eq!(e.dim(), 2);
    }
}
