//! Normal fans, touching cones and touching spaces of full-dimensional polytopes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::Polytope;
use crate::linalg::{self, Point};
use crate::measure::selector::sphere_region_measure;
use crate::tolerance::geom_eps;

/// The normal cone `N(P, F)` of a proper face.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalCone {
    /// Vertex indices of the face.
    pub face: Vec<usize>,
    pub face_dim: usize,
    /// Outer normals of the facets containing the face; they generate the cone.
    pub rays: Vec<Point>,
    /// `n - dim F`.
    pub dim: usize,
}

impl NormalCone {
    /// A unit vector in the relative interior: the normalized sum of the rays.
    pub fn representative(&self) -> Point {
        let n = self.rays[0].len();
        let mut s = vec![0.0; n];
        for r in &self.rays {
            linalg::axpy(&mut s, 1.0, r);
        }
        linalg::normalize(&s).expect("rays of a pointed cone do not cancel")
    }

    /// Inequalities `<c, u> >= 0` describing the cone.
    pub fn constraints(&self, p: &Polytope) -> Vec<Point> {
        let base = &p.vertices()[self.face[0]];
        p.vertices().iter().map(|w| linalg::sub(base, w)).collect()
    }

    /// Solid angle of a full-dimensional cone, `n <= 3`.
    pub fn solid_angle(&self, p: &Polytope) -> Result<f64> {
        let n = p.ambient_dim();
        if n > 3 {
            return Err(Error::UnsupportedDimension { dim: n, max: 3 });
        }
        if self.dim < n {
            return Ok(0.0);
        }
        let cons: Vec<Point> = self
            .constraints(p)
            .into_iter()
            .filter(|c| linalg::norm(c) > geom_eps())
            .collect();
        Ok(sphere_region_measure(n, &cons))
    }
}

/// All normal cones of a full-dimensional polytope, by increasing cone dimension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalFan {
    pub ambient_dim: usize,
    pub cones: Vec<NormalCone>,
}

/// The touching cone `T(P, z)` with its face `F(P, z)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TouchingCone {
    /// Vertex indices of the support set `F(P, z)`.
    pub face: Vec<usize>,
    pub rays: Vec<Point>,
    pub dim: usize,
    /// Orthonormal basis of the touching space `TS(P, z) = T(P, z)^⊥`.
    pub touching_space: Vec<Point>,
}

fn require_full(p: &Polytope) -> Result<()> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            dim: p.dim(),
            ambient: p.ambient_dim(),
        });
    }
    Ok(())
}

pub(crate) fn require_unit(p: &Polytope, z: &[f64]) -> Result<()> {
    if z.len() != p.ambient_dim() {
        return Err(Error::dim(p.ambient_dim(), z.len()));
    }
    let l = linalg::norm(z);
    if (l - 1.0).abs() > geom_eps().max(1e-12) {
        return Err(Error::NotUnit(l));
    }
    Ok(())
}

pub fn normal_fan(p: &Polytope) -> Result<NormalFan> {
    require_full(p)?;
    let n = p.ambient_dim();
    let mut cones = Vec::new();
    for k in (0..n).rev() {
        for f in p.faces().of_dim(k) {
            cones.push(NormalCone {
                face: f.vertices.clone(),
                face_dim: k,
                rays: f.facets.iter().map(|&i| p.facets()[i].normal.clone()).collect(),
                dim: n - k,
            });
        }
    }
    Ok(NormalFan { ambient_dim: n, cones })
}

/// `T(P, z)`.
///
/// For a polytope `z` lies in the relative interior of `N(P, F(P, z))`, so the
/// touching cone is that normal cone. The support set is found with a
/// tolerance; a near-tie enlarges the face and so snaps `z` to the
/// lower-dimensional cone.
pub fn touching_cone(p: &Polytope, z: &[f64]) -> Result<TouchingCone> {
    require_full(p)?;
    require_unit(p, z)?;
    let n = p.ambient_dim();
    let support = p.support_set(z);
    let containing: Vec<usize> = (0..p.facets().len())
        .filter(|&i| support.iter().all(|v| p.facets()[i].vertices.contains(v)))
        .collect();
    let face: Vec<usize> = (0..p.vertices().len())
        .filter(|v| containing.iter().all(|&i| p.facets()[i].vertices.contains(v)))
        .collect();
    let rays: Vec<Point> = containing.iter().map(|&i| p.facets()[i].normal.clone()).collect();
    let span = linalg::orthonormal_span(&rays, n);
    let touching_space = linalg::orthogonal_complement(&span, n);
    Ok(TouchingCone {
        face,
        rays,
        dim: span.len(),
        touching_space,
    })
}

/// `dim T(P, z) <= r + 1`.
pub fn is_r_extreme(p: &Polytope, z: &[f64], r: usize) -> Result<bool> {
    Ok(touching_cone(p, z)?.dim <= r + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn dir(v: &[f64]) -> Point {
        linalg::normalize(v).unwrap()
    }

    #[test]
    fn square_and_cube_fans() {
        let fan = normal_fan(&Polytope::unit_cube(2)).unwrap();
        let dims: Vec<usize> = fan.cones.iter().map(|c| c.dim).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 1).count(), 4);
        assert_eq!(dims.iter().filter(|&&d| d == 2).count(), 4);
        let fan = normal_fan(&Polytope::unit_cube(3)).unwrap();
        let count = |k| fan.cones.iter().filter(|c| c.dim == k).count();
        assert_eq!((count(1), count(2), count(3)), (6, 12, 8));
    }

    #[test]
    fn vertex_cones_tile_the_sphere() {
        let p = Polytope::from_points(&[
            vec![0.1, 0.0, 0.0],
            vec![1.3, 0.2, 0.1],
            vec![0.2, 0.9, -0.3],
            vec![0.4, 0.3, 1.1],
        ])
        .unwrap();
        let fan = normal_fan(&p).unwrap();
        let total: f64 = fan.cones.iter().map(|c| c.solid_angle(&p).unwrap()).sum();
        assert!((total - 4.0 * PI).abs() < 1e-8);
    }

    #[test]
    fn cube_touching_cones() {
        let c = Polytope::unit_cube(3);
        assert_eq!(touching_cone(&c, &[1.0, 0.0, 0.0]).unwrap().dim, 1);
        assert_eq!(touching_cone(&c, &dir(&[1.0, 1.0, 0.0])).unwrap().dim, 2);
        let t = touching_cone(&c, &dir(&[1.0, 1.0, 1.0])).unwrap();
        assert_eq!(t.dim, 3);
        assert!(t.touching_space.is_empty());
    }

    #[test]
    fn r_extreme_on_cube() {
        let c = Polytope::unit_cube(3);
        assert!(is_r_extreme(&c, &[1.0, 0.0, 0.0], 0).unwrap());
        let e = dir(&[1.0, 1.0, 0.0]);
        assert!(!is_r_extreme(&c, &e, 0).unwrap());
        assert!(is_r_extreme(&c, &e, 1).unwrap());
    }

    #[test]
    fn non_unit_direction_is_rejected() {
        let c = Polytope::unit_cube(3);
        assert!(matches!(touching_cone(&c, &[2.0, 0.0, 0.0]), Err(Error::NotUnit(_))));
    }
}
