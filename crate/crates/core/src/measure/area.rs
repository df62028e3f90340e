//! Surface and mixed area measures, mixed volumes and intrinsic volumes of polytopes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{ball_approx, minkowski_combination, Polytope};
use crate::linalg::{self, binomial, kappa};
use crate::measure::discrete::{Atom, DiscreteMeasure, MeasureKind};
use crate::polar;

/// Relative agreement required between the two mixed-volume routes.
pub const MIXED_VOLUME_REL_TOL: f64 = 1e-8;

/// A value computed with a polytopal ball approximant, with its error bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxValue {
    pub value: f64,
    /// The exact value lies in `[value, value + error]`.
    pub error: f64,
    /// Hausdorff distance of the approximant used (0 if none).
    pub delta: f64,
}

/// A measure computed with a polytopal ball approximant.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxMeasure {
    pub measure: DiscreteMeasure,
    pub delta: f64,
}

/// `S_{n-1}(P, ·)`.
///
/// Full-dimensional: facet normals weighted by facet areas. Dimension `n-1`:
/// both normals of the carrying hyperplane with weight `vol_{n-1}(P)`.
/// Lower dimensions: zero.
pub fn surface_area_measure(p: &Polytope) -> DiscreteMeasure {
    let n = p.ambient_dim();
    let atoms = if p.is_full_dimensional() {
        p.facets()
            .iter()
            .map(|f| Atom {
                loc: f.normal.clone(),
                weight: f.area,
            })
            .collect()
    } else if p.dim() + 1 == n {
        let u = p.normal_space().remove(0);
        let w = p.relative_volume();
        vec![
            Atom {
                loc: linalg::scale(&u, -1.0),
                weight: w,
            },
            Atom { loc: u, weight: w },
        ]
    } else {
        Vec::new()
    };
    DiscreteMeasure::from_atoms(MeasureKind::Sphere, n, atoms)
}

fn check_ambient(bodies: &[&Polytope], n: usize) -> Result<()> {
    for b in bodies {
        if b.ambient_dim() != n {
            return Err(Error::dim(n, b.ambient_dim()));
        }
    }
    Ok(())
}

/// Mixed area measure of `n - 1` polytopes in `R^n` by polarization.
pub fn mixed_area_measure(bodies: &[Polytope]) -> Result<DiscreteMeasure> {
    let refs: Vec<&Polytope> = bodies.iter().collect();
    let n = bodies.first().ok_or(Error::Arity { expected: 1, found: 0 })?.ambient_dim();
    mixed_area_measure_in(n, &refs)
}

/// Mixed area measure in `R^n`; `bodies.len()` must be `n - 1`.
pub fn mixed_area_measure_in(n: usize, bodies: &[&Polytope]) -> Result<DiscreteMeasure> {
    if n == 0 || bodies.len() + 1 != n {
        return Err(Error::Arity {
            expected: n.saturating_sub(1),
            found: bodies.len(),
        });
    }
    check_ambient(bodies, n)?;
    if bodies.is_empty() {
        return Ok(DiscreteMeasure::from_atoms(
            MeasureKind::Sphere,
            1,
            vec![
                Atom {
                    loc: vec![-1.0],
                    weight: 1.0,
                },
                Atom {
                    loc: vec![1.0],
                    weight: 1.0,
                },
            ],
        ));
    }
    let (reps, counts) = polar::group(bodies, |a, b| a == b);
    if reps.len() == 1 {
        return Ok(surface_area_measure(bodies[reps[0]]));
    }
    let distinct: Vec<&Polytope> = reps.iter().map(|&r| bodies[r]).collect();
    let mut parts = Vec::new();
    for t in polar::terms(&counts) {
        let coeffs: Vec<f64> = t.mult.iter().map(|&m| m as f64).collect();
        let sum = minkowski_combination(&distinct, &coeffs)?;
        parts.push((t.coeff, surface_area_measure(&sum)));
    }
    let refs: Vec<(f64, &DiscreteMeasure)> = parts.iter().map(|(c, m)| (*c, m)).collect();
    DiscreteMeasure::linear_combination(MeasureKind::Sphere, n, &refs).finalize()
}

/// Both routes of the mixed volume: `(volume polarization, (1/n) ∫ h_{K_1} dS(K_2..K_n))`.
pub fn mixed_volume_routes(bodies: &[Polytope]) -> Result<(f64, f64)> {
    let n = bodies.len();
    let refs: Vec<&Polytope> = bodies.iter().collect();
    if n == 0 {
        return Err(Error::Arity { expected: 1, found: 0 });
    }
    check_ambient(&refs, n)?;
    let (reps, counts) = polar::group(&refs, |a, b| a == b);
    let distinct: Vec<&Polytope> = reps.iter().map(|&r| refs[r]).collect();
    let mut by_volume = 0.0;
    for t in polar::terms(&counts) {
        let coeffs: Vec<f64> = t.mult.iter().map(|&m| m as f64).collect();
        by_volume += t.coeff * minkowski_combination(&distinct, &coeffs)?.volume();
    }
    let s = mixed_area_measure_in(n, &refs[1..])?;
    let by_integral = s.integrate(|u| refs[0].support_function(u)) / n as f64;
    Ok((by_volume, by_integral))
}

/// `V(K_1, ..., K_n)`, cross-checked by two independent routes.
pub fn mixed_volume(bodies: &[Polytope]) -> Result<f64> {
    let (a, b) = mixed_volume_routes(bodies)?;
    if (a - b).abs() > MIXED_VOLUME_REL_TOL * a.abs().max(b.abs()) + 1e-12 {
        return Err(Error::PolarizationInconsistency {
            volume_route: a,
            integral_route: b,
        });
    }
    Ok(a)
}

/// `V_j(P) = binom(n,j) / kappa_{n-j} * V(P[j], B[n-j])` with an inscribed ball approximant.
pub fn intrinsic_volume(p: &Polytope, j: usize, refinement: usize) -> Result<ApproxValue> {
    let n = p.ambient_dim();
    if j > n {
        return Err(Error::InvalidArgument(format!("intrinsic volume index {j} exceeds dimension {n}")));
    }
    if j == 0 {
        return Ok(ApproxValue {
            value: 1.0,
            error: 0.0,
            delta: 0.0,
        });
    }
    if j == n {
        return Ok(ApproxValue {
            value: p.volume(),
            error: 0.0,
            delta: 0.0,
        });
    }
    let ball = ball_approx(n, refinement)?;
    let mut bodies = vec![p.clone(); j];
    bodies.extend(std::iter::repeat_n(ball.polytope.clone(), n - j));
    let v = mixed_volume(&bodies)?;
    let value = binomial(n, j) / kappa(n - j) * v;
    // (1 - δ) B ⊆ B_m ⊆ B and mixed volumes are monotone and homogeneous.
    let error = value * ((1.0 - ball.delta).powi(-((n - j) as i32)) - 1.0);
    Ok(ApproxValue {
        value,
        error,
        delta: ball.delta,
    })
}

/// `S_j(P, ·) = S(P[j], B[n-1-j], ·)` with an inscribed ball approximant.
pub fn area_measure_j(p: &Polytope, j: usize, refinement: usize) -> Result<ApproxMeasure> {
    let n = p.ambient_dim();
    if j + 1 > n {
        return Err(Error::InvalidArgument(format!("area measure index {j} needs j <= {}", n - 1)));
    }
    if j + 1 == n {
        return Ok(ApproxMeasure {
            measure: surface_area_measure(p),
            delta: 0.0,
        });
    }
    let ball = ball_approx(n, refinement)?;
    let mut bodies = vec![p.clone(); j];
    bodies.extend(std::iter::repeat_n(ball.polytope.clone(), n - 1 - j));
    let refs: Vec<&Polytope> = bodies.iter().collect();
    Ok(ApproxMeasure {
        measure: mixed_area_measure_in(n, &refs)?,
        delta: ball.delta,
    })
}
