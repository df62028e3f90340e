//! Kubota-type estimators: projections onto `G(ℓ, k + 1)` for bodies and
//! restrictions to `G(j, n)` for functions.

use crate::convex::{mixed_ma, PLConvexFunction};
use crate::error::{Error, Result};
use crate::geom::{ball_approx, Polytope};
use crate::linalg::{kappa, Point};
use crate::measure::{mixed_area_measure_in, ApproxValue};

use super::haar::{sample_grassmann, sample_grassmann_through_line};
use super::sampler::{run, MCEstimate, McConfig};

fn check_bodies(bodies: &[Polytope]) -> Result<(usize, usize)> {
    let n = bodies.first().ok_or(Error::Arity { expected: 1, found: 0 })?.ambient_dim();
    let k = bodies.len();
    if k + 1 > n {
        return Err(Error::Arity {
            expected: n.saturating_sub(1),
            found: k,
        });
    }
    for b in bodies {
        if b.ambient_dim() != n {
            return Err(Error::dim(n, b.ambient_dim()));
        }
    }
    Ok((n, k))
}

/// `∫ f dS(K_1, ..., K_k, B_L[n-1-k], ·)` estimated by averaging the exact
/// mixed area measures of the projections onto `E ∈ G(ℓ, k + 1)`, scaled by
/// `κ_{n-1} / κ_k`.
///
/// For `k = n - 1` every sample is the full space; the exact value is
/// returned with zero standard error.
pub fn kubota_bodies<F>(f: F, bodies: &[Polytope], cfg: &McConfig) -> Result<MCEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let (n, k) = check_bodies(bodies)?;
    if k + 1 == n {
        let refs: Vec<&Polytope> = bodies.iter().collect();
        let value = mixed_area_measure_in(n, &refs)?.integrate(&f);
        return Ok(MCEstimate::exact(value, cfg.samples, cfg.seed));
    }
    let scale = kappa(n - 1) / kappa(k);
    let f = &f;
    run(cfg, |s| {
        let e = sample_grassmann_through_line(k + 1, n, s)?;
        let projected: Vec<Polytope> = bodies.iter().map(|b| b.project(&e)).collect::<Result<_>>()?;
        let refs: Vec<&Polytope> = projected.iter().collect();
        let m = mixed_area_measure_in(k + 1, &refs)?;
        Ok(scale * m.integrate(|z| f(&e.push(z))))
    })
}

/// Baseline for [`kubota_bodies`]: `B_L` replaced by the inscribed polygonal
/// (or polytopal) approximant of the unit ball of `L = e_n^⊥`.
///
/// The error term `(1 - δ)^{-(n-1-k)} - 1` times `∫ |f| dS` is a bound when
/// `f` is constant, by monotonicity of mixed volumes; otherwise it is the same
/// scale used as a heuristic.
pub fn kubota_bodies_baseline<F>(f: F, bodies: &[Polytope], refinement: usize) -> Result<ApproxValue>
where
    F: Fn(&[f64]) -> f64,
{
    let (n, k) = check_bodies(bodies)?;
    let mut all: Vec<Polytope> = bodies.to_vec();
    let mut delta = 0.0;
    if k + 1 < n {
        let ball = ball_approx(n - 1, refinement)?;
        delta = ball.delta;
        let lifted: Vec<Point> = ball
            .polytope
            .vertices()
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.push(0.0);
                w
            })
            .collect();
        let disk = Polytope::from_points(&lifted)?;
        all.extend(std::iter::repeat_n(disk, n - 1 - k));
    }
    let refs: Vec<&Polytope> = all.iter().collect();
    let m = mixed_area_measure_in(n, &refs)?;
    let value = m.integrate(&f);
    let magnitude = m.integrate(|u| f(u).abs());
    let error = magnitude * ((1.0 - delta).powi(-((n - 1 - k) as i32)) - 1.0);
    Ok(ApproxValue { value, error, delta })
}

/// `∫ φ dMA(v_1, ..., v_j, h_{B^n}[n-j]; ·)` estimated by averaging
/// `∫_E φ dMA_E(v_1|_E, ..., v_j|_E; ·)` over `E ∈ G(j, n)`, scaled by `κ_n / κ_j`.
pub fn kubota_functions<F>(phi: F, vs: &[PLConvexFunction], cfg: &McConfig) -> Result<MCEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let n = vs.first().ok_or(Error::Arity { expected: 1, found: 0 })?.dim();
    let j = vs.len();
    if j >= n {
        return Err(Error::Arity {
            expected: n.saturating_sub(1),
            found: j,
        });
    }
    for v in vs {
        if v.dim() != n {
            return Err(Error::dim(n, v.dim()));
        }
        if !v.is_finite() {
            return Err(Error::NotFinite);
        }
    }
    let scale = kappa(n) / kappa(j);
    let phi = &phi;
    run(cfg, |s| {
        let e = sample_grassmann(j, n, s)?;
        let restricted: Vec<PLConvexFunction> = vs.iter().map(|v| v.restrict(&e)).collect::<Result<_>>()?;
        let m = mixed_ma(&restricted)?;
        Ok(scale * m.integrate(|x| phi(&e.push(x))))
    })
}
