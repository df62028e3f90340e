//! Monge–Ampère measures of PL functions and their conjugate and mixed versions.

use crate::error::{Error, Result};
use crate::geom::{vertices_from_halfspaces, Polytope};
use crate::linalg::{self, Point};
use crate::measure::{surface_area_measure, Atom, DiscreteMeasure, MeasureKind};
use crate::polar;

use super::function::PLConvexFunction;
use super::lifted::lower_hull;

/// Location agreement required between the two MA routes.
pub const MA_LOCATION_TOL: f64 = 1e-9;
/// Relative weight agreement required between the two MA routes.
pub const MA_WEIGHT_TOL: f64 = 1e-8;

/// Normals with `ν_{n+1}` above `-EQUATOR_TOL` are not on the open lower half-sphere.
const EQUATOR_TOL: f64 = 1e-9;

fn require_finite(v: &PLConvexFunction) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::NotFinite)
    }
}

/// `MA(v; ·)` from the regular subdivision of `conv{a_i}`: one atom per cell
/// at the primal vertex it is dual to, weighted by the cell volume.
pub fn ma_measure_lifted(v: &PLConvexFunction) -> Result<DiscreteMeasure> {
    require_finite(v)?;
    let n = v.dim();
    let a: Vec<Point> = v.pieces().iter().map(|p| p.a.clone()).collect();
    let b: Vec<f64> = v.pieces().iter().map(|p| p.b).collect();
    let lh = lower_hull(&a, &b)?;
    if lh.dim() < n {
        return Ok(DiscreteMeasure::zero(MeasureKind::Point, n));
    }
    let atoms = lh
        .facets
        .into_iter()
        .map(|f| Atom {
            loc: f.slope,
            weight: f.volume,
        })
        .collect();
    DiscreteMeasure::from_atoms(MeasureKind::Point, n, atoms).finalize()
}

/// `MA(v; ·)` from the vertices `p` of `v`'s own complex with weights
/// `vol ∂v(p)`.
///
/// Vertices are enumerated inside growing boxes `|x_i| <= R` until the mass
/// found equals `vol conv{a_i}`.
pub fn ma_measure_vertices(v: &PLConvexFunction) -> Result<DiscreteMeasure> {
    require_finite(v)?;
    let n = v.dim();
    let grads: Vec<Point> = v.pieces().iter().map(|p| p.a.clone()).collect();
    let expected = Polytope::from_points(&grads)?.volume();
    let mut radius = 1.0f64;
    for _ in 0..40 {
        let top = v
            .pieces()
            .iter()
            .map(|p| radius * p.a.iter().map(|x| x.abs()).sum::<f64>() - p.b)
            .fold(f64::NEG_INFINITY, f64::max)
            + 1.0;
        let mut cons: Vec<(Point, f64)> = Vec::new();
        for p in v.pieces() {
            let mut g = p.a.clone();
            g.push(-1.0);
            cons.push((g, p.b));
        }
        for i in 0..n {
            for s in [1.0, -1.0] {
                let mut g = linalg::scale(&linalg::unit(n, i), s);
                g.push(0.0);
                cons.push((g, radius));
            }
        }
        let mut up = vec![0.0; n];
        up.push(1.0);
        cons.push((up, top));
        let origin = vec![0.0; n];
        let mut interior = origin.clone();
        interior.push(v.evaluate(&origin) + 0.5);
        let verts = vertices_from_halfspaces(&cons, &interior)?;
        let inner = radius * (1.0 - 1e-9);
        let mut atoms = Vec::new();
        for y in verts {
            let x = &y[..n];
            if y[n] > top - 0.25 || x.iter().any(|c| c.abs() >= inner) {
                continue;
            }
            let act: Vec<Point> = v.active_pieces(x).into_iter().map(|i| grads[i].clone()).collect();
            let cell = Polytope::from_points(&act)?;
            atoms.push(Atom {
                loc: x.to_vec(),
                weight: cell.volume(),
            });
        }
        let m = DiscreteMeasure::from_atoms(MeasureKind::Point, n, atoms).finalize()?;
        if (m.total_mass() - expected).abs() <= 1e-9 * expected.max(1.0) {
            return Ok(m);
        }
        radius *= 2.0;
    }
    Err(Error::OracleDisagreement(format!(
        "vertex enumeration did not recover the mass {expected} of conv{{a_i}}"
    )))
}

/// `MA(v; ·)`, computed by both routes; they must agree atomwise.
pub fn ma_measure(v: &PLConvexFunction) -> Result<DiscreteMeasure> {
    let primary = ma_measure_lifted(v)?;
    let oracle = ma_measure_vertices(v)?;
    if !primary.agrees_with(&oracle, MA_LOCATION_TOL, MA_WEIGHT_TOL) {
        let d = primary.diff(&oracle);
        return Err(Error::OracleDisagreement(format!(
            "lifted and vertex routes differ: location {:.3e}, weight {:.3e}, unmatched {:.3e}",
            d.max_location_error, d.max_weight_error, d.max_unmatched_weight
        )));
    }
    Ok(primary)
}

/// `MA(v_1, ..., v_n; ·)` by polarization over pointwise sums.
pub fn mixed_ma(vs: &[PLConvexFunction]) -> Result<DiscreteMeasure> {
    let n = vs.first().ok_or(Error::Arity { expected: 1, found: 0 })?.dim();
    if vs.len() != n {
        return Err(Error::Arity {
            expected: n,
            found: vs.len(),
        });
    }
    for v in vs {
        if v.dim() != n {
            return Err(Error::dim(n, v.dim()));
        }
        require_finite(v)?;
    }
    let refs: Vec<&PLConvexFunction> = vs.iter().collect();
    let (reps, counts) = polar::group(&refs, |a, b| a == b);
    if reps.len() == 1 {
        return ma_measure(&vs[0]);
    }
    let mut parts = Vec::new();
    for t in polar::terms(&counts) {
        let scaled: Vec<PLConvexFunction> = t
            .mult
            .iter()
            .zip(&reps)
            .filter(|(m, _)| **m > 0)
            .map(|(&m, &r)| refs[r].scale(m as f64))
            .collect::<Result<_>>()?;
        let srefs: Vec<&PLConvexFunction> = scaled.iter().collect();
        parts.push((t.coeff, ma_measure(&PLConvexFunction::sum(&srefs)?)?));
    }
    let terms: Vec<(f64, &DiscreteMeasure)> = parts.iter().map(|(c, m)| (*c, m)).collect();
    DiscreteMeasure::linear_combination(MeasureKind::Point, n, &terms).finalize()
}

/// `MA*(u_1, ..., u_n; ·) = MA(u_1*, ..., u_n*; ·)` for functions with compact domains.
pub fn conj_ma(us: &[PLConvexFunction]) -> Result<DiscreteMeasure> {
    let conj: Vec<PLConvexFunction> = us
        .iter()
        .map(|u| {
            if u.is_finite() {
                Err(Error::NotCoercive("conjugate MA needs a compact domain".into()))
            } else {
                u.legendre()
            }
        })
        .collect::<Result<_>>()?;
    mixed_ma(&conj)
}

/// `K^u`: the epigraph of `u` capped at `M_u = max u`.
pub fn epigraph_body(u: &PLConvexFunction) -> Result<Polytope> {
    let verts = u
        .domain()
        .ok_or(Error::NotCoercive("the epigraph body needs a compact domain".into()))
        .and_then(|_| u.complex_vertices())?;
    let top = verts.iter().map(|(_, v)| *v).fold(f64::NEG_INFINITY, f64::max);
    let mut pts: Vec<Point> = Vec::with_capacity(2 * verts.len());
    for (p, v) in &verts {
        let mut lo = p.clone();
        lo.push(*v);
        let mut hi = p.clone();
        hi.push(top);
        pts.push(lo);
        pts.push(hi);
    }
    Polytope::from_points(&pts)
}

/// Pushes the lower half of a sphere measure in `R^{n+1}` to `R^n` by the
/// gnomonic map `ν ↦ ν_{1..n} / |ν_{n+1}|`, weighting by `|ν_{n+1}|`.
///
/// Atoms on the closed upper half-sphere are discarded.
pub fn gnomonic_transfer_measure(m: &DiscreteMeasure) -> Result<DiscreteMeasure> {
    if m.kind() != MeasureKind::Sphere || m.dim() < 2 {
        return Err(Error::InvalidArgument("gnomonic transfer needs a sphere measure in dimension >= 2".into()));
    }
    let n = m.dim() - 1;
    let atoms = m
        .atoms()
        .iter()
        .filter(|a| a.loc[n] < -EQUATOR_TOL)
        .map(|a| {
            let t = -a.loc[n];
            Atom {
                loc: a.loc[..n].iter().map(|x| x / t).collect(),
                weight: a.weight * t,
            }
        })
        .collect();
    Ok(DiscreteMeasure::from_atoms(MeasureKind::Point, n, atoms))
}

/// Gnomonic transfer of `S_n(P, ·)`.
pub fn gnomonic_transfer(p: &Polytope) -> Result<DiscreteMeasure> {
    gnomonic_transfer_measure(&surface_area_measure(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::function::Piece;
    use crate::geom::Polytope;

    fn abs1() -> PLConvexFunction {
        PLConvexFunction::new(1, vec![Piece::new(vec![1.0], 0.0), Piece::new(vec![-1.0], 0.0)], None).unwrap()
    }

    fn interval() -> Polytope {
        Polytope::segment(vec![-1.0], vec![1.0]).unwrap()
    }

    #[test]
    fn abs_has_atom_two_at_origin() {
        let m = ma_measure(&abs1()).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert!(m.atoms()[0].loc[0].abs() < 1e-12);
        assert!((m.atoms()[0].weight - 2.0).abs() < 1e-12);
    }

    #[test]
    fn norm_inf_mass_is_cross_polytope_volume() {
        for n in 1..=3 {
            let m = ma_measure(&PLConvexFunction::norm_inf(n)).unwrap();
            assert_eq!(m.atoms().len(), 1);
            let want = 2f64.powi(n as i32) / linalg::factorial(n);
            assert!((m.total_mass() - want).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn affine_function_has_zero_measure() {
        let m = ma_measure(&PLConvexFunction::affine(vec![1.0, 2.0], 0.5)).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn shifted_kinks_are_found_far_out() {
        // max(x - 20, -x - 30, 0) has kinks at -30 and 20
        let f = PLConvexFunction::new(
            1,
            vec![Piece::new(vec![1.0], 20.0), Piece::new(vec![-1.0], 30.0), Piece::new(vec![0.0], 0.0)],
            None,
        )
        .unwrap();
        let m = ma_measure(&f).unwrap();
        assert_eq!(m.atoms().len(), 2);
        assert!((m.atoms()[0].loc[0] + 30.0).abs() < 1e-9);
        assert!((m.atoms()[1].loc[0] - 20.0).abs() < 1e-9);
    }

    #[test]
    fn mixed_ma_of_coordinate_ramps() {
        for n in 2..=3 {
            let vs: Vec<PLConvexFunction> = (0..n)
                .map(|i| PLConvexFunction::support_function(&Polytope::segment(vec![0.0; n], linalg::unit(n, i)).unwrap()))
                .collect();
            let m = mixed_ma(&vs).unwrap();
            assert_eq!(m.atoms().len(), 1);
            assert!(linalg::norm(&m.atoms()[0].loc) < 1e-12);
            assert!((m.total_mass() - 1.0 / linalg::factorial(n)).abs() < 1e-12);
        }
    }

    #[test]
    fn conj_ma_of_indicator_is_volume_at_origin() {
        let k = Polytope::cuboid(&[0.0, 0.0], &[2.0, 1.5]).unwrap();
        let ind = PLConvexFunction::indicator(&k);
        let m = conj_ma(&[ind.clone(), ind]).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert!((m.total_mass() - 3.0).abs() < 1e-12);
        assert!(matches!(conj_ma(&[abs1()]), Err(Error::NotCoercive(_))));
    }

    #[test]
    fn epigraph_bodies_in_dimension_one() {
        let ind = PLConvexFunction::indicator(&interval());
        let k = epigraph_body(&ind).unwrap();
        assert_eq!(k.dim(), 1);
        let g = gnomonic_transfer(&k).unwrap();
        assert_eq!(g.atoms().len(), 1);
        assert!((g.atoms()[0].weight - 2.0).abs() < 1e-12);

        let u = abs1().add(&ind).unwrap();
        let k = epigraph_body(&u).unwrap();
        let tri = Polytope::from_points(&[vec![-1.0, 1.0], vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert!(k.approx_eq(&tri, 1e-12));
        let g = gnomonic_transfer(&k).unwrap();
        let c = conj_ma(&[u]).unwrap();
        assert!(g.agrees_with(&c, 1e-9, 1e-9));
        assert_eq!(c.atoms().len(), 2);
        assert!((c.atoms()[0].loc[0] + 1.0).abs() < 1e-12 && (c.atoms()[0].weight - 1.0).abs() < 1e-12);
    }
}
