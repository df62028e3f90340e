//! Mixed-extreme normal vectors relative to the fixed line `ℓ = lin{e_n}`.
//!
//! Two independent deciders: a dimension count on the touching space, and a
//! constructive search for a subspace `E ⊇ ℓ ∪ {z}` of dimension `j + 1` in
//! which `z` is a facet normal of the projected polytope.

use serde_json::json;

use crate::error::{Error, Result};
use crate::geom::{Polytope, Subspace};
use crate::linalg::{self, Point};
use crate::report::VerificationReport;
use crate::support::fan::{normal_fan, require_unit, touching_cone};

/// Tolerance for deciding that a unit vector lies in `ℓ` or a subspace lies in `L`.
const LINE_TOL: f64 = 1e-9;

fn check_index(n: usize, j: usize) -> Result<()> {
    if j == 0 || j + 1 > n {
        return Err(Error::InvalidArgument(format!("index {j} must satisfy 1 <= j <= {}", n.saturating_sub(1))));
    }
    Ok(())
}

fn on_axis(z: &[f64]) -> bool {
    let n = z.len();
    (z[n - 1].abs() - 1.0).abs() <= LINE_TOL
}

/// True iff `z ∈ supp S(P[j], B_L[n-1-j], ·)`, decided by `dim TS(P, z)`.
pub fn is_mixed_extreme_ball(p: &Polytope, z: &[f64], j: usize) -> Result<bool> {
    let n = p.ambient_dim();
    check_index(n, j)?;
    let t = touching_cone(p, z)?;
    let ts = &t.touching_space;
    if j == n - 1 {
        return Ok(ts.len() == n - 1);
    }
    if ts.len() < j {
        return Ok(false);
    }
    if on_axis(z) {
        return Ok(true);
    }
    // TS ⊄ L iff e_n has a nonzero component in TS
    let en_in_ts: f64 = ts.iter().map(|v| v[n - 1] * v[n - 1]).sum::<f64>().sqrt();
    Ok(en_in_ts > LINE_TOL)
}

/// Orthonormal basis of `TS ∩ L` from an orthonormal basis of `TS`.
fn intersect_with_l(ts: &[Point], n: usize) -> Vec<Point> {
    let a: Point = ts.iter().map(|v| v[n - 1]).collect();
    let Some(a) = linalg::normalize(&a).filter(|_| linalg::norm(&a) > LINE_TOL) else {
        return ts.to_vec();
    };
    linalg::orthogonal_complement(&[a], ts.len())
        .iter()
        .map(|c| linalg::combine(c, ts, n))
        .collect()
}

/// `dim F(proj_E P, z)` for `z ∈ E`.
fn projected_face_dim(p: &Polytope, e: &Subspace, z: &[f64]) -> Result<usize> {
    let q = p.project(e)?;
    let ze = e.pull(z);
    let ids = q.support_set(&ze);
    let v = q.vertices();
    let diffs: Vec<Point> = ids[1..].iter().map(|&i| linalg::sub(&v[i], &v[ids[0]])).collect();
    Ok(linalg::rank(&diffs, e.dim()))
}

fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in pool.iter().enumerate() {
        for mut rest in combinations(&pool[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Searches for `E ∈ G(ℓ, j + 1)` with `z ∈ E` and `dim F(proj_E P, z) = j`.
///
/// The first candidate is `lin{z, e_n} + U` with `U` spanned by `j - 1`
/// vectors of `TS ∩ L` (or `ℓ + U` with `j` vectors of `TS` when `z ∈ ℓ`);
/// coordinate subspaces are tried next. Returns the witness if one is found.
pub fn projection_witness(p: &Polytope, z: &[f64], j: usize) -> Result<Option<Subspace>> {
    let n = p.ambient_dim();
    check_index(n, j)?;
    require_unit(p, z)?;
    let en = linalg::unit(n, n - 1);
    let axis = on_axis(z);
    let t = touching_cone(p, z)?;
    let mut candidates: Vec<Vec<Point>> = Vec::new();
    if axis {
        if t.touching_space.len() >= j {
            let mut gens = vec![en.clone()];
            gens.extend(t.touching_space[..j].iter().cloned());
            candidates.push(gens);
        }
    } else {
        let u = intersect_with_l(&t.touching_space, n);
        if u.len() + 1 >= j {
            let mut gens = vec![z.to_vec(), en.clone()];
            gens.extend(u[..j - 1].iter().cloned());
            candidates.push(gens);
        }
    }
    let pool: Vec<usize> = (0..n - 1).collect();
    let extra = if axis { j } else { j - 1 };
    for axes in combinations(&pool, extra) {
        let mut gens = vec![z.to_vec(), en.clone()];
        gens.extend(axes.iter().map(|&i| linalg::unit(n, i)));
        candidates.push(gens);
    }
    for gens in candidates {
        let e = Subspace::span_ordered(n, &gens);
        if e.dim() != j + 1 {
            continue;
        }
        if projected_face_dim(p, &e, z)? == j {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Support membership decided through projections onto subspaces containing `ℓ`.
pub fn support_membership_via_projections(p: &Polytope, z: &[f64], j: usize) -> Result<bool> {
    Ok(projection_witness(p, z, j)?.is_some())
}

/// Relative-interior representatives of all normal-fan cones, plus `±e_n`.
pub fn witness_directions(p: &Polytope) -> Result<Vec<Point>> {
    let n = p.ambient_dim();
    let mut out: Vec<Point> = normal_fan(p)?.cones.iter().map(|c| c.representative()).collect();
    let en = linalg::unit(n, n - 1);
    out.push(linalg::scale(&en, -1.0));
    out.push(en);
    Ok(out)
}

/// Checks `k`-mixed-extreme ⇒ `j`-mixed-extreme on every witness direction.
pub fn nesting_check(p: &Polytope, j: usize, k: usize) -> Result<VerificationReport> {
    let n = p.ambient_dim();
    check_index(n, j)?;
    check_index(n, k)?;
    if j > k {
        return Err(Error::InvalidArgument(format!("nesting needs j <= k, got j={j}, k={k}")));
    }
    let mut report = VerificationReport::new(
        "support-nesting-bodies",
        json!({ "vertices": p.vertices(), "j": j, "k": k }),
    );
    for z in witness_directions(p)? {
        let ek = is_mixed_extreme_ball(p, &z, k)?;
        let ej = is_mixed_extreme_ball(p, &z, j)?;
        report.check(!ek || ej, || json!({ "direction": z, "k_extreme": ek, "j_extreme": ej }));
    }
    Ok(report)
}
