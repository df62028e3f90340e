//! Localized parallel volumes and mixed Monge–Ampère measures of support
//! functions with copies of `q = |x|^2 / 2`.

use crate::error::{Error, Result};
use crate::geom::{minkowski_combination, Polytope};
use crate::linalg::{self, binomial, Point};
use crate::measure::selector::ConeSelector;
use crate::polar;

/// Largest ambient dimension with exact solid angles.
pub const MAX_EXACT_DIM: usize = 3;

/// Residual bound for the Vandermonde coefficient extraction.
pub const EXTRACTION_RESIDUAL: f64 = 1e-8;

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_EXACT_DIM {
        return Err(Error::UnsupportedDimension {
            dim: n,
            max: MAX_EXACT_DIM,
        });
    }
    Ok(())
}

/// `MA(h_P + r q; A)`: volume of the points of `P + r B^n` whose Moreau
/// gradient `(x - p_P(x)) / r` lies in `A`.
///
/// Sums `vol(F) r^{n - dim F} vol(N(P, F) ∩ A)` over all faces `F` of `P`
/// including `P` itself.
pub fn local_parallel_ma(p: &Polytope, r: f64, selector: &ConeSelector) -> Result<f64> {
    let n = p.ambient_dim();
    check_dim(n)?;
    if selector.dim != n {
        return Err(Error::dim(n, selector.dim));
    }
    selector.validate()?;
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("parallel radius must be nonnegative, got {r}")));
    }
    let verts = p.vertices();
    let mut total = 0.0;
    for face in p.faces().iter() {
        let sub = p.sub_polytope(&face.vertices);
        let frame = sub.normal_space();
        let base = &verts[face.vertices[0]];
        let cone: Vec<Point> = verts.iter().map(|w| linalg::sub(base, w)).collect();
        let solid = selector.volume_in_cone(&frame, &cone);
        if solid != 0.0 {
            total += sub.relative_volume() * r.powi((n - face.dim) as i32) * solid;
        }
    }
    Ok(total)
}

/// Coefficients `c_0..c_n` of the polynomial `r ↦ local_parallel_ma(P, r, A)`.
pub fn parallel_polynomial(p: &Polytope, selector: &ConeSelector) -> Result<Vec<f64>> {
    let n = p.ambient_dim();
    check_dim(n)?;
    let nodes: Vec<f64> = (1..=n + 1).map(|i| i as f64 / (n + 1) as f64).collect();
    let rows: Vec<Point> = nodes.iter().map(|&r| (0..=n).map(|e| r.powi(e as i32)).collect()).collect();
    let values: Vec<f64> = nodes
        .iter()
        .map(|&r| local_parallel_ma(p, r, selector))
        .collect::<Result<_>>()?;
    let coeffs = linalg::solve(&rows, &values).ok_or(Error::CoefficientExtraction { residual: f64::INFINITY })?;
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let residual = rows
        .iter()
        .zip(&values)
        .map(|(row, v)| (linalg::dot(row, &coeffs) - v).abs())
        .fold(0.0, f64::max)
        / scale;
    if !(residual <= EXTRACTION_RESIDUAL) {
        return Err(Error::CoefficientExtraction { residual });
    }
    Ok(coeffs)
}

/// `MA(h_{K_1}, ..., h_{K_k}, q[n - k]; A)` for `1 <= k <= n - 1`.
///
/// The diagonal value `MA(h_K[k], q[n-k]; A)` is the coefficient of
/// `r^{n-k}` in `MA(h_K + r q; A)` divided by `binom(n, k)`; the mixed value
/// follows by polarization over the bodies.
pub fn mixed_ma_bodies_q(bodies: &[Polytope], selector: &ConeSelector) -> Result<f64> {
    let k = bodies.len();
    let n = bodies.first().ok_or(Error::Arity { expected: 1, found: 0 })?.ambient_dim();
    check_dim(n)?;
    if k >= n {
        return Err(Error::Arity {
            expected: n - 1,
            found: k,
        });
    }
    for b in bodies {
        if b.ambient_dim() != n {
            return Err(Error::dim(n, b.ambient_dim()));
        }
    }
    let refs: Vec<&Polytope> = bodies.iter().collect();
    let (reps, counts) = polar::group(&refs, |a, b| a == b);
    let distinct: Vec<&Polytope> = reps.iter().map(|&r| refs[r]).collect();
    let norm = binomial(n, k);
    let mut total = 0.0;
    for t in polar::terms(&counts) {
        let coeffs: Vec<f64> = t.mult.iter().map(|&m| m as f64).collect();
        let sum = minkowski_combination(&distinct, &coeffs)?;
        let poly = parallel_polynomial(&sum, selector)?;
        total += t.coeff * poly[n - k] / norm;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::selector::SphericalPolytope;
    use std::f64::consts::PI;

    #[test]
    fn full_ball_gives_steiner_polynomial_of_square() {
        let sq = Polytope::cuboid(&[0.0, 0.0], &[2.0, 1.0]).unwrap();
        let ball = ConeSelector::full_ball(2);
        for r in [0.0, 0.5, 1.3] {
            let v = local_parallel_ma(&sq, r, &ball).unwrap();
            let steiner = 2.0 + 2.0 * 3.0 * r + PI * r * r;
            assert!((v - steiner).abs() < 1e-12, "r={r}");
        }
    }

    #[test]
    fn origin_selector_gives_volume() {
        let c = Polytope::cuboid(&[0.0; 3], &[1.0, 2.0, 3.0]).unwrap();
        let o = ConeSelector::hat(3, Vec::new());
        assert!((local_parallel_ma(&c, 0.7, &o).unwrap() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn open_quadrant_at_square_corner() {
        let sq = Polytope::unit_cube(2);
        let sel = ConeSelector::tilde(2, vec![SphericalPolytope::open(vec![vec![1.0, 0.0], vec![0.0, 1.0]])]);
        assert!((local_parallel_ma(&sq, 1.0, &sel).unwrap() - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn sphere_selector_coefficients_vanish() {
        let c = Polytope::unit_cube(3);
        let sel = ConeSelector::origin_and_sphere(3);
        let poly = parallel_polynomial(&c, &sel).unwrap();
        assert!((poly[0] - 1.0).abs() < 1e-9);
        for c in &poly[1..] {
            assert!(c.abs() < 1e-8);
        }
    }

    #[test]
    fn rejects_dimension_four() {
        let c = Polytope::unit_cube(4);
        assert!(matches!(
            local_parallel_ma(&c, 1.0, &ConeSelector::full_ball(4)),
            Err(Error::UnsupportedDimension { .. })
        ));
    }
}
