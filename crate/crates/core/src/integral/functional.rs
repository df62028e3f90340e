//! Functional intrinsic volumes and the sphere average of segment valuations.

use std::sync::Arc;

use crate::convex::{ma_measure, PLConvexFunction};
use crate::error::{Error, Result};
use crate::geom::{ball_approx, Polytope};
use crate::linalg::{self, binomial, kappa};
use crate::measure::{mixed_volume, ApproxValue};

use super::kubota::kubota_functions;
use super::sampler::{run, MCEstimate, McConfig};

/// A density `α` on `[0, ∞)` vanishing beyond `support`.
#[derive(Clone)]
pub struct RadialDensity {
    support: f64,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for RadialDensity {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("RadialDensity").field("support", &self.support).finish()
    }
}

impl RadialDensity {
    /// Fails unless `support` is finite and nonnegative.
    pub fn new(support: f64, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        if !(support.is_finite() && support >= 0.0) {
            return Err(Error::NoCompactSupport);
        }
        Ok(RadialDensity { support, f: Arc::new(f) })
    }

    /// The hat `max(0, 1 - r / radius)`.
    pub fn hat(radius: f64) -> Result<Self> {
        Self::new(radius, move |r| (1.0 - r / radius).max(0.0))
    }

    pub fn support(&self) -> f64 {
        self.support
    }

    pub fn eval(&self, r: f64) -> f64 {
        if r > self.support {
            0.0
        } else {
            (self.f)(r)
        }
    }
}

/// `binom(n, j) / κ_{n-j} ∫ α(|x|) dMA(v[j], h_{B^n}[n-j]; x)`.
///
/// `j = 0` is `α(0)` and `j = n` the exact atom sum; in between the Kubota
/// estimator carries the ball slots.
pub fn functional_intrinsic_volume(
    v: &PLConvexFunction,
    j: usize,
    alpha: &RadialDensity,
    cfg: &McConfig,
) -> Result<MCEstimate> {
    let n = v.dim();
    if j > n {
        return Err(Error::InvalidArgument(format!("index {j} exceeds dimension {n}")));
    }
    if !v.is_finite() {
        return Err(Error::NotFinite);
    }
    if j == 0 {
        return Ok(MCEstimate::exact(alpha.eval(0.0), cfg.samples, cfg.seed));
    }
    if j == n {
        let value = ma_measure(v)?.integrate(|x| alpha.eval(linalg::norm(x)));
        return Ok(MCEstimate::exact(value, cfg.samples, cfg.seed));
    }
    let slots = vec![v.clone(); j];
    let est = kubota_functions(|x| alpha.eval(linalg::norm(x)), &slots, cfg)?;
    Ok(est.scaled(binomial(n, j) / kappa(n - j)))
}

/// `ψ(K) = n V(K, Q[n-1])` for a fixed polytope `Q`.
#[derive(Clone, Debug)]
pub struct MixedVolumeFunctional {
    q: Polytope,
}

impl MixedVolumeFunctional {
    pub fn new(q: Polytope) -> Self {
        MixedVolumeFunctional { q }
    }

    pub fn dim(&self) -> usize {
        self.q.ambient_dim()
    }

    pub fn eval(&self, k: &Polytope) -> Result<f64> {
        let n = self.dim();
        let mut bodies = vec![k.clone()];
        bodies.extend(std::iter::repeat_n(self.q.clone(), n - 1));
        Ok(n as f64 * mixed_volume(&bodies)?)
    }
}

/// `∫_{S^{n-1}} ψ([o, e]) dH^{n-1}(e)` by uniform directions times `n κ_n`.
pub fn sphere_segment_average<P>(psi: P, n: usize, cfg: &McConfig) -> Result<MCEstimate>
where
    P: Fn(&Polytope) -> Result<f64> + Sync,
{
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let area = n as f64 * kappa(n);
    let psi = &psi;
    run(cfg, |s| {
        let e = s.unit_vector(n);
        Ok(area * psi(&Polytope::segment(vec![0.0; n], e)?)?)
    })
}

/// `κ_{n-1} ψ(B^n)` with an inscribed approximant; the error bound holds for
/// monotone, 1-homogeneous `ψ`.
pub fn sphere_segment_baseline<P>(psi: P, n: usize, refinement: usize) -> Result<ApproxValue>
where
    P: Fn(&Polytope) -> Result<f64>,
{
    let ball = ball_approx(n, refinement)?;
    let value = kappa(n - 1) * psi(&ball.polytope)?;
    Ok(ApproxValue {
        value,
        error: value.abs() * ball.delta / (1.0 - ball.delta),
        delta: ball.delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_needs_compact_support() {
        assert_eq!(RadialDensity::new(f64::INFINITY, |_| 1.0).unwrap_err(), Error::NoCompactSupport);
        let a = RadialDensity::hat(2.0).unwrap();
        assert_eq!(a.eval(0.0), 1.0);
        assert_eq!(a.eval(3.0), 0.0);
    }

    #[test]
    fn index_zero_is_alpha_at_origin() {
        let a = RadialDensity::new(1.0, |r| 0.75 - r).unwrap();
        let v = PLConvexFunction::norm_inf(3);
        let e = functional_intrinsic_volume(&v, 0, &a, &McConfig::default()).unwrap();
        assert_eq!(e.mean, 0.75);
        assert_eq!(e.stderr, 0.0);
    }

    #[test]
    fn top_index_is_cross_polytope_volume() {
        let a = RadialDensity::hat(1.0).unwrap();
        let v = PLConvexFunction::norm_inf(3);
        let e = functional_intrinsic_volume(&v, 3, &a, &McConfig::default()).unwrap();
        assert!((e.mean - 8.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn cube_support_function_gives_binomials() {
        let a = RadialDensity::hat(1.0).unwrap();
        let v = PLConvexFunction::support_function(&Polytope::unit_cube(3));
        for j in 1..=2 {
            let e = functional_intrinsic_volume(&v, j, &a, &McConfig::new(7, 2_000)).unwrap();
            assert!(e.within(binomial(3, j), 3.0, 0.0), "j={j}: {e:?}");
        }
    }

    #[test]
    fn square_perimeter_functional() {
        let psi = MixedVolumeFunctional::new(Polytope::unit_cube(2));
        let est = sphere_segment_average(|k| psi.eval(k), 2, &McConfig::new(7, 4_000)).unwrap();
        let base = sphere_segment_baseline(|k| psi.eval(k), 2, 16).unwrap();
        // ∫ (|e_1| + |e_2|) over the circle
        assert!(est.within(8.0, 3.0, 0.0), "{est:?}");
        assert!((base.value - 8.0).abs() <= base.error + 1e-12, "{base:?}");
    }

    #[test]
    fn zero_functional_averages_to_zero() {
        let est = sphere_segment_average(|_| Ok(0.0), 3, &McConfig::new(7, 100)).unwrap();
        assert_eq!(est.mean, 0.0);
        let base = sphere_segment_baseline(|_| Ok(0.0), 3, 2).unwrap();
        assert_eq!(base.value, 0.0);
    }
}
