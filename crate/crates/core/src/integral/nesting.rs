//! Supports of `MA(v[j], h_{B^n}[n-j]; ·)` for finite PL functions.
//!
//! A point `x` lies in the candidate set when some `E ∈ G(j, n)` contains it
//! with `x` extreme for `v|_E`. Since `∂(v|_E)(x) = proj_E ∂v(x)`, this holds
//! iff `dim ∂v(x) >= j` and (`x = o` or `x` is not orthogonal to the direction
//! space `D` of `∂v(x)`). A second decider searches for `E` explicitly and
//! checks the restricted subdifferential.

use serde_json::json;

use crate::convex::PLConvexFunction;
use crate::error::{Error, Result};
use crate::geom::Subspace;
use crate::linalg::{self, Point};
use crate::report::VerificationReport;

/// Relative threshold for `x ⊥ D` and for `x = o`.
const ORTHO_TOL: f64 = 1e-9;

/// Grid step for default witnesses.
pub const GRID_STEP: f64 = 0.5;

/// Grid points per axis are capped at this many.
const GRID_CAP: usize = 9;

fn check(v: &PLConvexFunction, j: usize) -> Result<usize> {
    let n = v.dim();
    if !v.is_finite() {
        return Err(Error::NotFinite);
    }
    if j == 0 || j > n {
        return Err(Error::InvalidArgument(format!("index {j} must satisfy 1 <= j <= {n}")));
    }
    Ok(n)
}

/// `x` is `r`-extreme iff `v` is affine on no `(r + 1)`-ball at `x`, i.e. `dim ∂v(x) >= n - r`.
pub fn is_extreme_point(v: &PLConvexFunction, x: &[f64], r: usize) -> Result<bool> {
    let n = v.dim();
    if r >= n {
        return Ok(false);
    }
    Ok(v.subdifferential(x)?.dim() + r >= n)
}

fn is_origin(x: &[f64]) -> bool {
    linalg::norm(x) <= ORTHO_TOL
}

/// Exact decider: `∃ E ∈ G(j, n)` with `x ∈ E` and `x` extreme for `v|_E`.
pub fn restricted_support_contains(v: &PLConvexFunction, x: &[f64], j: usize) -> Result<bool> {
    check(v, j)?;
    let sub = v.subdifferential(x)?;
    if sub.dim() < j {
        return Ok(false);
    }
    if is_origin(x) {
        return Ok(true);
    }
    let along = linalg::norm(&linalg::coords(x, sub.direction_basis()));
    Ok(along > ORTHO_TOL * linalg::norm(x))
}

fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &a) in pool.iter().enumerate() {
        for mut rest in combinations(&pool[i + 1..], k - 1) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Constructive decider: returns `E ∈ G(j, n)` with `x ∈ E` and
/// `dim ∂(v|_E)(x) = j`, if one is found.
///
/// The first candidate is `lin{x} + U` with `U ⊆ D ∩ (proj_D x)^⊥` (or `j`
/// vectors of `D` when `x = o`); coordinate subspaces through `x` follow.
pub fn restriction_witness(v: &PLConvexFunction, x: &[f64], j: usize) -> Result<Option<Subspace>> {
    let n = check(v, j)?;
    let d = v.subdifferential(x)?.direction_basis().to_vec();
    let origin = is_origin(x);
    let mut candidates: Vec<Vec<Point>> = Vec::new();
    if origin {
        if d.len() >= j {
            candidates.push(d[..j].to_vec());
        }
    } else {
        let c = linalg::coords(x, &d);
        if let Some(c) = linalg::normalize(&c).filter(|_| linalg::norm(&c) > ORTHO_TOL * linalg::norm(x)) {
            let u: Vec<Point> = linalg::orthogonal_complement(&[c], d.len())
                .iter()
                .map(|w| linalg::combine(w, &d, n))
                .collect();
            if u.len() + 1 >= j {
                let mut gens = vec![x.to_vec()];
                gens.extend(u[..j - 1].iter().cloned());
                candidates.push(gens);
            }
        }
    }
    let pool: Vec<usize> = (0..n).collect();
    let extra = if origin { j } else { j - 1 };
    for axes in combinations(&pool, extra) {
        let mut gens = if origin { Vec::new() } else { vec![x.to_vec()] };
        gens.extend(axes.iter().map(|&i| linalg::unit(n, i)));
        candidates.push(gens);
    }
    for gens in candidates {
        let e = Subspace::span_ordered(n, &gens);
        if e.dim() != j {
            continue;
        }
        let w = v.restrict(&e)?;
        if w.subdifferential(&e.pull(x))?.dim() == j {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// 0-cells of the complex of `v`, the origin, midpoints of pairs of 0-cells,
/// and a grid of step [`GRID_STEP`] over their bounding box.
pub fn default_witnesses(v: &PLConvexFunction) -> Result<Vec<Point>> {
    let n = v.dim();
    let mut pts: Vec<Point> = v.legendre()?.pieces().iter().map(|p| p.a.clone()).collect();
    pts.push(vec![0.0; n]);
    let cells = pts.len();
    for a in 0..cells {
        for b in a + 1..cells {
            pts.push(linalg::scale(&linalg::add(&pts[a], &pts[b]), 0.5));
        }
    }
    let lo: Vec<f64> = (0..n).map(|i| pts.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..n).map(|i| pts.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let axes: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let first = (lo[i] / GRID_STEP).floor() as i64;
            let last = (hi[i] / GRID_STEP).ceil() as i64;
            let count = ((last - first + 1) as usize).min(GRID_CAP);
            let step = if count > 1 { (last - first) as f64 * GRID_STEP / (count - 1) as f64 } else { 0.0 };
            (0..count).map(|k| first as f64 * GRID_STEP + k as f64 * step).collect()
        })
        .collect();
    let mut grid: Vec<Point> = vec![Vec::new()];
    for axis in &axes {
        grid = grid
            .into_iter()
            .flat_map(|g| {
                axis.iter().map(move |&t| {
                    let mut h = g.clone();
                    h.push(t);
                    h
                })
            })
            .collect();
    }
    pts.extend(grid);
    pts.sort_by(|a, b| linalg::lex_cmp(a, b));
    pts.dedup_by(|a, b| linalg::dist(a, b) <= 1e-12);
    Ok(pts)
}

/// Checks on `witnesses` that both deciders agree for `j` and `k`, and that
/// membership for `k` implies membership for `j`.
pub fn support_nesting_ma(v: &PLConvexFunction, j: usize, k: usize, witnesses: &[Point]) -> Result<VerificationReport> {
    check(v, j)?;
    check(v, k)?;
    if j > k {
        return Err(Error::InvalidArgument(format!("nesting needs j <= k, got j={j}, k={k}")));
    }
    let pieces: Vec<(Point, f64)> = v.pieces().iter().map(|p| (p.a.clone(), p.b)).collect();
    let mut report = VerificationReport::new("support-nesting-ma", json!({ "pieces": pieces, "j": j, "k": k }));
    let mut members = [0usize; 2];
    for x in witnesses {
        let in_k = restricted_support_contains(v, x, k)?;
        let in_j = restricted_support_contains(v, x, j)?;
        let built_k = restriction_witness(v, x, k)?.is_some();
        let built_j = restriction_witness(v, x, j)?.is_some();
        members[0] += in_j as usize;
        members[1] += in_k as usize;
        report.check(in_k == built_k && in_j == built_j && (!in_k || in_j), || {
            json!({
                "point": x,
                "k_member": in_k,
                "j_member": in_j,
                "k_witness_found": built_k,
                "j_witness_found": built_j,
            })
        });
    }
    report.metric("j_members", members[0]);
    report.metric("k_members", members[1]);
    Ok(report)
}
