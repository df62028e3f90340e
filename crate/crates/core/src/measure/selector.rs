//! Polyhedral selectors of subsets of the unit ball and exact solid angles.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Point};
use crate::tolerance::geom_eps;

/// Spherical polytope `{u ∈ S^{n-1} : <g, u> >= 0 for all g}` (strict if `open`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalPolytope {
    pub normals: Vec<Point>,
    #[serde(default)]
    pub open: bool,
}

impl SphericalPolytope {
    pub fn closed(normals: Vec<Point>) -> Self {
        SphericalPolytope { normals, open: false }
    }

    pub fn open(normals: Vec<Point>) -> Self {
        SphericalPolytope { normals, open: true }
    }

    pub fn contains(&self, u: &[f64]) -> bool {
        let t = geom_eps();
        self.normals.iter().all(|g| {
            let s = linalg::dot(g, u);
            if self.open {
                s > t
            } else {
                s >= -t
            }
        })
    }
}

/// A subset `A` of the closed unit ball assembled from a spherical region `ω`:
///
/// - the origin if `include_origin`;
/// - the open radial part `{t u : 0 < t < 1, u ∈ ω}` always;
/// - `ω` itself on the sphere if `close_omega`;
/// - the whole unit sphere if `include_sphere`.
///
/// `ω` is the union of `regions`; an empty list is the empty set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeSelector {
    pub dim: usize,
    pub regions: Vec<SphericalPolytope>,
    pub include_origin: bool,
    pub close_omega: bool,
    pub include_sphere: bool,
}

impl ConeSelector {
    /// `ω̂ = {t u : t ∈ [0, 1], u ∈ ω}`.
    pub fn hat(dim: usize, regions: Vec<SphericalPolytope>) -> Self {
        ConeSelector {
            dim,
            regions,
            include_origin: true,
            close_omega: true,
            include_sphere: false,
        }
    }

    /// `ω̃ = {t u : t ∈ (0, 1), u ∈ ω}`.
    pub fn tilde(dim: usize, regions: Vec<SphericalPolytope>) -> Self {
        ConeSelector {
            dim,
            regions,
            include_origin: false,
            close_omega: false,
            include_sphere: false,
        }
    }

    /// The closed unit ball.
    pub fn full_ball(dim: usize) -> Self {
        Self::hat(dim, vec![SphericalPolytope::closed(Vec::new())])
    }

    /// `{o} ∪ S^{n-1}`.
    pub fn origin_and_sphere(dim: usize) -> Self {
        ConeSelector {
            dim,
            regions: Vec::new(),
            include_origin: true,
            close_omega: false,
            include_sphere: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for r in &self.regions {
            for g in &r.normals {
                if g.len() != self.dim {
                    return Err(Error::dim(self.dim, g.len()));
                }
            }
        }
        Ok(())
    }

    fn in_omega(&self, u: &[f64]) -> bool {
        self.regions.iter().any(|r| r.contains(u))
    }

    /// Exact membership of a point of `R^n`.
    pub fn contains(&self, x: &[f64]) -> bool {
        let r = linalg::norm(x);
        if r == 0.0 {
            return self.include_origin;
        }
        let u = linalg::scale(x, 1.0 / r);
        if r < 1.0 {
            self.in_omega(&u)
        } else if r == 1.0 {
            self.include_sphere || (self.close_omega && self.in_omega(&u))
        } else {
            false
        }
    }

    /// `vol_m(C ∩ A)` for the cone `C = {y ∈ V : <c, y> >= 0}`, with `V` given
    /// by an orthonormal frame and `c` ranging over `cone`.
    ///
    /// The origin and the sphere are null sets unless `V = {o}`.
    pub fn volume_in_cone(&self, frame: &[Point], cone: &[Point]) -> f64 {
        let m = frame.len();
        if m == 0 {
            return if self.include_origin { 1.0 } else { 0.0 };
        }
        let cone_local = project_constraints(frame, cone);
        // inclusion-exclusion over the regions of ω
        let k = self.regions.len();
        let mut total = 0.0;
        for mask in 1u32..(1u32 << k) {
            let mut cons = cone_local.clone();
            let mut empty = false;
            for (i, r) in self.regions.iter().enumerate() {
                if mask & (1 << i) == 0 {
                    continue;
                }
                for g in &r.normals {
                    let lg = linalg::coords(g, frame);
                    if linalg::norm(&lg) <= geom_eps() * linalg::norm(g).max(1.0) {
                        // V lies on the boundary hyperplane of this constraint
                        if r.open {
                            empty = true;
                        }
                    } else {
                        cons.push(lg);
                    }
                }
            }
            if empty {
                continue;
            }
            let sign = if mask.count_ones() % 2 == 1 { 1.0 } else { -1.0 };
            total += sign * sphere_region_measure(m, &cons) / m as f64;
        }
        total
    }
}

/// Nonzero constraints expressed in the coordinates of `frame`.
fn project_constraints(frame: &[Point], cons: &[Point]) -> Vec<Point> {
    cons.iter()
        .map(|g| linalg::coords(g, frame))
        .filter(|lg| linalg::norm(lg) > geom_eps())
        .collect()
}

/// `(m-1)`-dimensional measure of `{u ∈ S^{m-1} : <g, u> >= 0}` for `m <= 3`.
///
/// Constraints are nonzero. The measure does not depend on strictness.
pub fn sphere_region_measure(m: usize, cons: &[Point]) -> f64 {
    match m {
        1 => [1.0, -1.0].iter().filter(|&&s| cons.iter().all(|g| g[0] * s >= 0.0)).count() as f64,
        2 => arc_measure(cons),
        3 => spherical_polygon_area(cons),
        _ => panic!("solid angles are exact only up to dimension 3"),
    }
}

/// Total length of `{θ : <g, (cos θ, sin θ)> >= 0}`.
fn arc_measure(cons: &[Point]) -> f64 {
    if cons.is_empty() {
        return 2.0 * PI;
    }
    let mut cuts: Vec<f64> = Vec::with_capacity(2 * cons.len());
    for g in cons {
        let a = g[1].atan2(g[0]);
        for s in [-0.5 * PI, 0.5 * PI] {
            cuts.push((a + s).rem_euclid(2.0 * PI));
        }
    }
    cuts.sort_by(f64::total_cmp);
    let mut total = 0.0;
    for i in 0..cuts.len() {
        let lo = cuts[i];
        let hi = if i + 1 < cuts.len() { cuts[i + 1] } else { cuts[0] + 2.0 * PI };
        if hi - lo <= 0.0 {
            continue;
        }
        let mid = 0.5 * (lo + hi);
        let u = [mid.cos(), mid.sin()];
        if cons.iter().all(|g| linalg::dot(g, &u) >= 0.0) {
            total += hi - lo;
        }
    }
    total
}

fn cross(a: &[f64], b: &[f64]) -> Point {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Area of `{u ∈ S^2 : <g, u> >= 0}`.
fn spherical_polygon_area(cons: &[Point]) -> f64 {
    let unit: Vec<Point> = cons.iter().filter_map(|g| linalg::normalize(g)).collect();
    match linalg::rank(&unit, 3) {
        0 => 4.0 * PI,
        1 => {
            let g0 = &unit[0];
            if unit.iter().any(|g| linalg::dot(g, g0) < 0.0) {
                0.0
            } else {
                2.0 * PI
            }
        }
        2 => {
            // a lune: product of a planar wedge with the orthogonal line
            let plane = linalg::orthonormal_span(&unit, 3);
            let local: Vec<Point> = unit.iter().map(|g| linalg::coords(g, &plane)).collect();
            2.0 * arc_measure(&local)
        }
        _ => pointed_cone_area(&unit),
    }
}

/// Area of a pointed polyhedral cone, from its extreme rays.
fn pointed_cone_area(cons: &[Point]) -> f64 {
    let tol = 1e-12;
    let mut rays: Vec<Point> = Vec::new();
    for i in 0..cons.len() {
        for j in i + 1..cons.len() {
            let x = cross(&cons[i], &cons[j]);
            if linalg::norm(&x) < 1e-10 {
                continue;
            }
            let c = linalg::normalize(&x).expect("nonzero");
            for r in [c.clone(), linalg::scale(&c, -1.0)] {
                if cons.iter().all(|g| linalg::dot(g, &r) >= -tol)
                    && !rays.iter().any(|q| linalg::dist(q, &r) < 1e-9)
                {
                    rays.push(r);
                }
            }
        }
    }
    if rays.len() < 3 {
        return 0.0;
    }
    let Some(center) = linalg::normalize(&linalg::centroid(&rays)) else {
        return 0.0;
    };
    let frame = linalg::orthogonal_complement(std::slice::from_ref(&center), 3);
    let mut by_angle: Vec<(f64, Point)> = rays
        .into_iter()
        .map(|r| (linalg::dot(&r, &frame[1]).atan2(linalg::dot(&r, &frame[0])), r))
        .collect();
    by_angle.sort_by(|a, b| a.0.total_cmp(&b.0));
    let a = &by_angle[0].1;
    let mut area = 0.0;
    for w in by_angle[1..].windows(2) {
        let (b, c) = (&w[0].1, &w[1].1);
        let det = linalg::dot(a, &cross(b, c)).abs();
        let den = 1.0 + linalg::dot(a, b) + linalg::dot(b, c) + linalg::dot(c, a);
        area += 2.0 * det.atan2(den);
    }
    area
}
