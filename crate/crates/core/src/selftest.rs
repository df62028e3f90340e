//! Closed-form sanity checks run by `mixedvol selftest`.
//!
//! Each check has a stable id. An error raised while evaluating a check counts
//! as a failure, so a misconfigured tolerance surfaces here instead of
//! silently changing results.

use serde::Serialize;

use crate::convex::{ma_measure, mixed_ma, PLConvexFunction, Piece};
use crate::error::Result;
use crate::geom::{ball_approx, Polytope, Subspace};
use crate::integral::{
    functional_intrinsic_volume, kubota_bodies, kubota_functions, sample_grassmann, sample_grassmann_through_line,
    sample_rotation, sphere_segment_average, support_nesting_ma, McConfig, RadialDensity, Sampler,
};
use crate::linalg::{self, unit, Point};
use crate::measure::{
    area_measure_j, intrinsic_volume, mixed_area_measure, mixed_volume, surface_area_measure, Atom, DiscreteMeasure,
};
use crate::random::random_polytope;
use crate::suites::SuiteSpec;
use crate::support::{is_r_extreme, nesting_check, normal_fan, support_membership_via_projections, touching_cone};

/// Comparison tolerance for closed-form values.
pub const SELFTEST_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub pass: bool,
    /// Error message when the check raised instead of returning.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: Vec<&'static str>,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

type Check = fn() -> Result<bool>;

/// Every check, in a fixed order.
pub fn checks() -> Vec<(&'static str, Check)> {
    vec![
        ("hull-drops-interior-point", hull_drops_interior_point),
        ("hull-single-point", hull_single_point),
        ("minkowski-squares", minkowski_squares),
        ("minkowski-identity", minkowski_identity),
        ("volume-cube", volume_cube),
        ("volume-simplex", volume_simplex),
        ("project-cube", project_cube),
        ("project-segment", project_segment),
        ("support-function-cube", support_function_cube),
        ("support-function-segment", support_function_segment),
        ("ball-approx-square", ball_approx_square),
        ("faces-square", faces_square),
        ("faces-segment-normals", faces_segment_normals),
        ("faces-cube-f-vector", faces_cube_f_vector),
        ("surface-measure-square", surface_measure_square),
        ("surface-measure-segment", surface_measure_segment),
        ("mixed-area-diagonal", mixed_area_diagonal),
        ("mixed-area-triangle", mixed_area_triangle),
        ("mixed-volume-diagonal", mixed_volume_diagonal),
        ("mixed-volume-symmetric", mixed_volume_symmetric),
        ("intrinsic-volume-segment", intrinsic_volume_segment),
        ("intrinsic-volume-zero", intrinsic_volume_zero),
        ("area-measure-top-index", area_measure_top_index),
        ("normal-fan-square", normal_fan_square),
        ("normal-fan-cube", normal_fan_cube),
        ("touching-cone-cube", touching_cone_cube),
        ("r-extreme-cube", r_extreme_cube),
        ("r-extreme-top", r_extreme_top),
        ("projection-top-index", projection_top_index),
        ("nesting-equal-indices", nesting_equal_indices),
        ("evaluate-abs", evaluate_abs),
        ("evaluate-support-square", evaluate_support_square),
        ("evaluate-indicator-outside", evaluate_indicator_outside),
        ("legendre-abs", legendre_abs),
        ("epi-sum-neutral", epi_sum_neutral),
        ("epi-scale-indicator", epi_scale_indicator),
        ("restrict-cube-support", restrict_cube_support),
        ("restrict-full-space", restrict_full_space),
        ("project-indicator-square", project_indicator_square),
        ("subdifferential-abs", subdifferential_abs),
        ("ma-abs", ma_abs),
        ("mixed-ma-diagonal", mixed_ma_diagonal),
        ("rotation-orthogonal", rotation_orthogonal),
        ("grassmann-full", grassmann_full),
        ("grassmann-line", grassmann_line),
        ("grassmann-contains-axis", grassmann_contains_axis),
        ("kubota-bodies-top-index", kubota_bodies_top_index),
        ("kubota-functions-routing", kubota_functions_routing),
        ("sphere-average-zero", sphere_average_zero),
        ("support-nesting-affine", support_nesting_affine),
        ("unknown-suite", unknown_suite),
    ]
}

/// Runs every check. Errors and panics count as failures.
pub fn run_selftest() -> SelftestSummary {
    let hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let outcomes: Vec<CheckOutcome> = checks()
        .into_iter()
        .map(|(id, check)| match std::panic::catch_unwind(check) {
            Ok(Ok(pass)) => CheckOutcome { id, pass, error: None },
            Ok(Err(e)) => CheckOutcome {
                id,
                pass: false,
                error: Some(e.to_string()),
            },
            Err(payload) => CheckOutcome {
                id,
                pass: false,
                error: Some(panic_message(payload.as_ref())),
            },
        })
        .collect();
    std::panic::set_hook(hook);
    let failed: Vec<&'static str> = outcomes.iter().filter(|c| !c.pass).map(|c| c.id).collect();
    SelftestSummary {
        total: outcomes.len(),
        passed: outcomes.len() - failed.len(),
        pass: failed.is_empty(),
        failed,
        checks: outcomes,
    }
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    let msg = payload
        .downcast_ref::<String>()
        .map(String::as_str)
        .or_else(|| payload.downcast_ref::<&str>().copied())
        .unwrap_or("unknown payload");
    format!("panic: {msg}")
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= SELFTEST_TOL
}

fn pt(xs: &[f64]) -> Point {
    xs.to_vec()
}

fn segment(a: &[f64], b: &[f64]) -> Result<Polytope> {
    Polytope::segment(a.to_vec(), b.to_vec())
}

fn same_points(mut a: Vec<Point>, mut b: Vec<Point>) -> bool {
    a.sort_by(|x, y| linalg::lex_cmp(x, y));
    b.sort_by(|x, y| linalg::lex_cmp(x, y));
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| linalg::dist(x, y) <= SELFTEST_TOL)
}

/// Atoms as `(location, weight)` pairs equal the expected list up to order.
fn atoms_are(m: &DiscreteMeasure, expected: &[(Point, f64)]) -> bool {
    let want = DiscreteMeasure::from_atoms(
        m.kind(),
        m.dim(),
        expected
            .iter()
            .map(|(loc, w)| Atom {
                loc: loc.clone(),
                weight: *w,
            })
            .collect(),
    );
    m.atoms().len() == expected.len() && m.agrees_with(&want, SELFTEST_TOL, SELFTEST_TOL)
}

/// Equal domains and equal values on a grid over `[-2, 2]^n`.
fn same_function(f: &PLConvexFunction, g: &PLConvexFunction) -> bool {
    if f.dim() != g.dim() {
        return false;
    }
    match (f.domain(), g.domain()) {
        (None, None) => {}
        (Some(a), Some(b)) if a.approx_eq(b, SELFTEST_TOL) => {}
        _ => return false,
    }
    let n = f.dim();
    let steps = 17usize;
    (0..steps.pow(n as u32)).all(|mut idx| {
        let x: Point = (0..n)
            .map(|_| {
                let i = idx % steps;
                idx /= steps;
                -2.0 + 0.25 * i as f64
            })
            .collect();
        let (a, b) = (f.evaluate(&x), g.evaluate(&x));
        a == b || close(a, b)
    })
}

fn hull_drops_interior_point() -> Result<bool> {
    let p = Polytope::from_points(&[pt(&[0.0, 0.0]), pt(&[1.0, 0.0]), pt(&[0.0, 1.0]), pt(&[0.2, 0.2])])?;
    Ok(p.vertices().len() == 3 && p.dim() == 2)
}

fn hull_single_point() -> Result<bool> {
    let p = Polytope::from_points(&[pt(&[0.0, 0.0, 0.0])])?;
    Ok(p.dim() == 0 && p.vertices().len() == 1)
}

fn minkowski_squares() -> Result<bool> {
    let sq = Polytope::unit_cube(2);
    Ok(sq.minkowski_sum(&sq)?.approx_eq(&Polytope::cuboid(&[0.0, 0.0], &[2.0, 2.0])?, SELFTEST_TOL))
}

fn minkowski_identity() -> Result<bool> {
    let p = Polytope::standard_simplex(3);
    Ok(p.minkowski_sum(&Polytope::point(vec![0.0; 3]))?.approx_eq(&p, SELFTEST_TOL))
}

fn volume_cube() -> Result<bool> {
    Ok(close(Polytope::unit_cube(3).volume(), 1.0))
}

fn volume_simplex() -> Result<bool> {
    Ok(close(Polytope::standard_simplex(3).volume(), 1.0 / 6.0))
}

fn project_cube() -> Result<bool> {
    let e = Subspace::coordinate(3, &[0, 1]);
    let image = Polytope::unit_cube(3).project(&e)?;
    Ok(image.approx_eq(&Polytope::unit_cube(2), SELFTEST_TOL))
}

fn project_segment() -> Result<bool> {
    let e = Subspace::coordinate(2, &[0]);
    let image = segment(&[0.0, 0.0], &[1.0, 0.0])?.project(&e)?;
    Ok(image.approx_eq(&segment(&[0.0], &[1.0])?, SELFTEST_TOL))
}

fn support_function_cube() -> Result<bool> {
    let cube = Polytope::unit_cube(3);
    let x = [0.7, -1.3, 2.1];
    Ok(close(cube.support_function(&x), x.iter().map(|t| t.max(0.0)).sum()))
}

fn support_function_segment() -> Result<bool> {
    Ok(close(segment(&[0.0, 0.0], &[1.0, 0.0])?.support_function(&[2.0, -3.0]), 2.0))
}

fn ball_approx_square() -> Result<bool> {
    let b = ball_approx(2, 1)?;
    let want = vec![pt(&[1.0, 0.0]), pt(&[-1.0, 0.0]), pt(&[0.0, 1.0]), pt(&[0.0, -1.0])];
    let delta = 1.0 - (std::f64::consts::PI / 4.0).cos();
    Ok(same_points(b.polytope.vertices().to_vec(), want) && close(b.delta, delta))
}

fn faces_square() -> Result<bool> {
    let sq = Polytope::unit_cube(2);
    let normals: Vec<Point> = sq.facets().iter().map(|f| f.normal.clone()).collect();
    let want = vec![unit(2, 0), linalg::scale(&unit(2, 0), -1.0), unit(2, 1), linalg::scale(&unit(2, 1), -1.0)];
    let lattice = sq.faces();
    Ok(lattice.f_vector() == vec![4, 4] && lattice.of_dim(2).len() == 1 && same_points(normals, want))
}

fn faces_segment_normals() -> Result<bool> {
    let s = segment(&[0.0, 0.0], &[1.0, 0.0])?;
    let normals: Vec<Point> = s
        .halfspaces()
        .into_iter()
        .filter(|(g, _)| g[0].abs() <= SELFTEST_TOL)
        .map(|(g, _)| g)
        .collect();
    Ok(same_points(normals, vec![unit(2, 1), linalg::scale(&unit(2, 1), -1.0)]))
}

fn faces_cube_f_vector() -> Result<bool> {
    Ok(Polytope::unit_cube(3).faces().f_vector() == vec![8, 12, 6])
}

fn surface_measure_square() -> Result<bool> {
    let m = surface_area_measure(&Polytope::unit_cube(2));
    let e1 = unit(2, 0);
    let e2 = unit(2, 1);
    Ok(atoms_are(
        &m,
        &[(e1.clone(), 1.0), (linalg::scale(&e1, -1.0), 1.0), (e2.clone(), 1.0), (linalg::scale(&e2, -1.0), 1.0)],
    ))
}

fn surface_measure_segment() -> Result<bool> {
    let m = surface_area_measure(&segment(&[0.0, 0.0], &[1.0, 0.0])?);
    let e2 = unit(2, 1);
    Ok(atoms_are(&m, &[(e2.clone(), 1.0), (linalg::scale(&e2, -1.0), 1.0)]))
}

fn mixed_area_diagonal() -> Result<bool> {
    let mut s = Sampler::new(7, 100);
    let k = random_polytope(3, 7, &mut s)?;
    let mixed = mixed_area_measure(&[k.clone(), k.clone()])?;
    Ok(mixed.agrees_with(&surface_area_measure(&k), SELFTEST_TOL, SELFTEST_TOL))
}

fn mixed_area_triangle() -> Result<bool> {
    let t = Polytope::from_points(&[pt(&[0.0, 0.0]), pt(&[2.0, 0.0]), pt(&[0.0, 1.0])])?;
    let m = mixed_area_measure(std::slice::from_ref(&t))?;
    let hyp = 5f64.sqrt();
    Ok(atoms_are(
        &m,
        &[(pt(&[0.0, -1.0]), 2.0), (pt(&[-1.0, 0.0]), 1.0), (pt(&[1.0 / hyp, 2.0 / hyp]), hyp)],
    ))
}

fn mixed_volume_diagonal() -> Result<bool> {
    let mut s = Sampler::new(7, 101);
    let k = random_polytope(3, 6, &mut s)?;
    let v = mixed_volume(&[k.clone(), k.clone(), k.clone()])?;
    Ok((v - k.volume()).abs() <= SELFTEST_TOL * k.volume().max(1.0))
}

fn mixed_volume_symmetric() -> Result<bool> {
    let mut s = Sampler::new(7, 102);
    let ks: Vec<Polytope> = (0..3).map(|_| random_polytope(3, 5, &mut s)).collect::<Result<_>>()?;
    let base = mixed_volume(&ks)?;
    let perms = [[1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    for p in perms {
        let v = mixed_volume(&[ks[p[0]].clone(), ks[p[1]].clone(), ks[p[2]].clone()])?;
        if (v - base).abs() > SELFTEST_TOL * base.abs().max(1.0) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn intrinsic_volume_segment() -> Result<bool> {
    let v = intrinsic_volume(&segment(&[0.0, 0.0, 0.0], &[0.0, 3.0, 4.0])?, 1, 3)?;
    Ok((v.value - 5.0).abs() <= v.error + SELFTEST_TOL)
}

fn intrinsic_volume_zero() -> Result<bool> {
    let v = intrinsic_volume(&Polytope::unit_cube(3), 0, 4)?;
    Ok(v.value == 1.0 && v.error == 0.0)
}

fn area_measure_top_index() -> Result<bool> {
    let cube = Polytope::unit_cube(3);
    let m = area_measure_j(&cube, 2, 4)?;
    Ok(m.delta == 0.0 && m.measure.agrees_with(&surface_area_measure(&cube), SELFTEST_TOL, SELFTEST_TOL))
}

fn cone_dims(p: &Polytope) -> Result<Vec<usize>> {
    let mut counts = vec![0; p.ambient_dim() + 1];
    for c in normal_fan(p)?.cones {
        counts[c.dim] += 1;
    }
    Ok(counts)
}

fn normal_fan_square() -> Result<bool> {
    Ok(cone_dims(&Polytope::unit_cube(2))? == vec![0, 4, 4])
}

fn normal_fan_cube() -> Result<bool> {
    Ok(cone_dims(&Polytope::unit_cube(3))? == vec![0, 6, 12, 8])
}

fn touching_cone_cube() -> Result<bool> {
    let t = touching_cone(&Polytope::unit_cube(3), &unit(3, 0))?;
    Ok(t.dim == 1 && same_points(t.rays.clone(), vec![unit(3, 0)]))
}

fn r_extreme_cube() -> Result<bool> {
    is_r_extreme(&Polytope::unit_cube(3), &unit(3, 0), 0)
}

fn r_extreme_top() -> Result<bool> {
    let mut s = Sampler::new(7, 103);
    let p = random_polytope(3, 8, &mut s)?;
    for _ in 0..20 {
        if !is_r_extreme(&p, &s.unit_vector(3), 2)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn projection_top_index() -> Result<bool> {
    let mut s = Sampler::new(7, 104);
    let p = random_polytope(3, 8, &mut s)?;
    let mut dirs: Vec<Point> = normal_fan(&p)?.cones.iter().map(|c| c.representative()).collect();
    dirs.extend((0..10).map(|_| s.unit_vector(3)));
    for z in &dirs {
        if support_membership_via_projections(&p, z, 2)? != is_r_extreme(&p, z, 0)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn nesting_equal_indices() -> Result<bool> {
    let mut s = Sampler::new(7, 105);
    let p = random_polytope(3, 8, &mut s)?;
    Ok(nesting_check(&p, 1, 1)?.pass && nesting_check(&p, 2, 2)?.pass)
}

fn abs_value() -> Result<PLConvexFunction> {
    PLConvexFunction::new(1, vec![Piece::new(vec![1.0], 0.0), Piece::new(vec![-1.0], 0.0)], None)
}

fn unit_interval_indicator() -> Result<PLConvexFunction> {
    Ok(PLConvexFunction::indicator(&segment(&[0.0], &[1.0])?))
}

fn evaluate_abs() -> Result<bool> {
    Ok(close(abs_value()?.evaluate(&[3.0]), 3.0))
}

fn evaluate_support_square() -> Result<bool> {
    let h = PLConvexFunction::support_function(&Polytope::unit_cube(2));
    Ok(close(h.evaluate(&[1.0, 2.0]), 3.0))
}

fn evaluate_indicator_outside() -> Result<bool> {
    Ok(unit_interval_indicator()?.evaluate(&[2.0]) == f64::INFINITY)
}

fn legendre_abs() -> Result<bool> {
    let want = PLConvexFunction::indicator(&segment(&[-1.0], &[1.0])?);
    Ok(same_function(&abs_value()?.legendre()?, &want))
}

fn epi_sum_neutral() -> Result<bool> {
    let u = PLConvexFunction::new(
        2,
        vec![Piece::new(vec![1.0, 0.5], 0.2), Piece::new(vec![-0.5, 1.0], -0.1)],
        Some(Polytope::cuboid(&[-1.0, -1.0], &[1.0, 0.5])?),
    )?;
    let origin = PLConvexFunction::indicator(&Polytope::point(vec![0.0, 0.0]));
    Ok(same_function(&u.inf_convolution(&origin)?, &u))
}

fn epi_scale_indicator() -> Result<bool> {
    let want = PLConvexFunction::indicator(&segment(&[0.0], &[2.0])?);
    Ok(same_function(&unit_interval_indicator()?.epi_scale(2.0)?, &want))
}

fn restrict_cube_support() -> Result<bool> {
    let h = PLConvexFunction::support_function(&Polytope::unit_cube(3));
    let restricted = h.restrict(&Subspace::coordinate(3, &[0, 1]))?;
    Ok(same_function(&restricted, &PLConvexFunction::support_function(&Polytope::unit_cube(2))))
}

fn restrict_full_space() -> Result<bool> {
    let v = PLConvexFunction::norm_one(3);
    Ok(same_function(&v.restrict(&Subspace::full(3))?, &v))
}

fn project_indicator_square() -> Result<bool> {
    let u = PLConvexFunction::indicator(&Polytope::unit_cube(2));
    Ok(same_function(&u.project(&Subspace::coordinate(2, &[0]))?, &unit_interval_indicator()?))
}

fn subdifferential_abs() -> Result<bool> {
    Ok(abs_value()?.subdifferential(&[0.0])?.approx_eq(&segment(&[-1.0], &[1.0])?, SELFTEST_TOL))
}

fn ma_abs() -> Result<bool> {
    Ok(atoms_are(&ma_measure(&abs_value()?)?, &[(pt(&[0.0]), 2.0)]))
}

fn mixed_ma_diagonal() -> Result<bool> {
    let v = PLConvexFunction::new(
        2,
        vec![
            Piece::new(vec![1.0, 0.0], 0.0),
            Piece::new(vec![0.0, 1.0], 0.3),
            Piece::new(vec![-1.0, -1.0], 0.1),
            Piece::new(vec![0.5, -1.0], -0.2),
        ],
        None,
    )?;
    let diag = mixed_ma(&[v.clone(), v.clone()])?;
    Ok(diag.agrees_with(&ma_measure(&v)?, SELFTEST_TOL, SELFTEST_TOL))
}

fn rotation_orthogonal() -> Result<bool> {
    let mut s = Sampler::new(7, 106);
    let r = sample_rotation(4, &mut s);
    Ok((0..4).all(|i| (0..4).all(|j| (linalg::dot(&r[i], &r[j]) - if i == j { 1.0 } else { 0.0 }).abs() <= 1e-12)))
}

fn grassmann_full() -> Result<bool> {
    let mut s = Sampler::new(7, 107);
    let e = sample_grassmann(3, 3, &mut s)?;
    Ok(e.dim() == 3 && (0..3).all(|i| e.contains(&unit(3, i), 1e-12)))
}

fn grassmann_line() -> Result<bool> {
    let mut s = Sampler::new(7, 108);
    let e = sample_grassmann_through_line(1, 3, &mut s)?;
    Ok(e.dim() == 1 && e.contains(&unit(3, 2), 1e-12))
}

fn grassmann_contains_axis() -> Result<bool> {
    let mut s = Sampler::new(7, 109);
    for k in 1..4 {
        for _ in 0..20 {
            if !sample_grassmann_through_line(k, 4, &mut s)?.contains(&unit(4, 3), 1e-12) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn kubota_bodies_top_index() -> Result<bool> {
    let bodies = vec![Polytope::unit_cube(3), Polytope::standard_simplex(3)];
    let f = |u: &[f64]| 1.0 + u[0] * u[0];
    let est = kubota_bodies(f, &bodies, &McConfig::new(7, 64))?;
    Ok(est.stderr == 0.0 && est.mean == mixed_area_measure(&bodies)?.integrate(f))
}

fn kubota_functions_routing() -> Result<bool> {
    let v = PLConvexFunction::norm_inf(2);
    let cfg = McConfig::new(7, 64);
    let rejected = kubota_functions(|_: &[f64]| 1.0, &[v.clone(), v.clone()], &cfg).is_err();
    let alpha = RadialDensity::hat(3.0)?;
    let exact = functional_intrinsic_volume(&v, 2, &alpha, &cfg)?;
    let want = ma_measure(&v)?.integrate(|x| alpha.eval(linalg::norm(x)));
    Ok(rejected && exact.stderr == 0.0 && close(exact.mean, want))
}

fn sphere_average_zero() -> Result<bool> {
    let est = sphere_segment_average(|_: &Polytope| Ok(0.0), 3, &McConfig::new(7, 64))?;
    Ok(est.mean == 0.0 && est.stderr == 0.0)
}

fn support_nesting_affine() -> Result<bool> {
    let v = PLConvexFunction::affine(vec![0.3, -0.7], 0.4);
    let witnesses: Vec<Point> = (-2..=2).flat_map(|i| (-2..=2).map(move |j| vec![i as f64 * 0.5, j as f64 * 0.5])).collect();
    for k in 1..=2 {
        for j in 1..=k {
            let r = support_nesting_ma(&v, j, k, &witnesses)?;
            if !r.pass {
                return Ok(false);
            }
        }
    }
    // no point of an affine function lies in any support
    Ok(witnesses.iter().all(|x| !crate::integral::restricted_support_contains(&v, x, 1).unwrap_or(true)))
}

fn unknown_suite() -> Result<bool> {
    Ok(SuiteSpec::new("unknown-suite").is_err_and(|e| e.is_parse()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes_at_default_tolerance() {
        let summary = run_selftest();
        assert!(summary.pass, "{:?}", summary.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = checks().iter().map(|(id, _)| *id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), checks().len());
    }
}
