//! Named verification suites, one per acceptance criterion.
//!
//! Every suite is deterministic given its seed. Defaults reproduce the
//! acceptance table; tolerances are fixed here.

use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use crate::convex::{conj_ma, epigraph_body, gnomonic_transfer, gnomonic_transfer_measure, ma_measure_lifted};
use crate::convex::{ma_measure_vertices, mixed_ma, PLConvexFunction};
use crate::error::{Error, Result};
use crate::geom::{Polytope, Subspace};
use crate::integral::{
    column, default_witnesses, functional_intrinsic_volume, kubota_bodies, kubota_bodies_baseline,
    sample_rotation, support_nesting_ma, McConfig, RadialDensity, Sampler, DEFAULT_SEED,
};
use crate::linalg::{self, binomial, factorial, Point};
use crate::measure::{
    mixed_area_measure, mixed_area_measure_in, mixed_ma_bodies_q, mixed_volume, mixed_volume_routes,
    parallel_polynomial, surface_area_measure, ConeSelector, DiscreteMeasure, MeasureKind, SphericalPolytope,
};
use crate::random::{
    point_in_box, random_coercive_dual, random_compact_pl_function, random_pl_function, random_polytope,
    random_simplex,
};
use crate::report::VerificationReport;
use crate::support::{is_mixed_extreme_ball, nesting_check, support_membership_via_projections, witness_directions};

/// Suite identifiers in acceptance order.
pub const SUITE_IDS: [&str; 11] = [
    "legendre-involution",
    "ma-dual-route",
    "mixed-volume",
    "ma-bodies",
    "gnomonic",
    "kubota-bodies",
    "kubota-functions",
    "restriction",
    "nesting-bodies",
    "steiner-bridge",
    "support-nesting-ma",
];

pub const INVOLUTION_TOL: f64 = 1e-9;
pub const INVOLUTION_GRID: usize = 1000;
pub const CORPUS_SIZE: usize = 50;
pub const MAX_PIECES: usize = 12;
pub const MA_LOCATION_TOL: f64 = 1e-9;
pub const MA_WEIGHT_TOL: f64 = 1e-8;
pub const MASS_TOL: f64 = 1e-9;
pub const MIXED_VOLUME_TOL: f64 = 1e-8;
pub const SEGMENT_TOL: f64 = 1e-12;
pub const MA_BODIES_TOL: f64 = 1e-8;
pub const GNOMONIC_TOL: f64 = 1e-8;
pub const RESTRICTION_TOL: f64 = 1e-8;
pub const STEINER_TOL: f64 = 1e-8;
/// Monte Carlo acceptance band in standard errors.
pub const SIGMAS: f64 = 3.0;
pub const KUBOTA_BODIES_SAMPLES: usize = 20_000;
/// `ball_approx(2, 32)` is the 128-gon.
pub const POLYGON_REFINEMENT: usize = 32;
pub const KUBOTA_FUNCTIONS_SAMPLES: usize = 10_000;

/// Wall-clock budgets in seconds (criteria 1, 5 and 7).
pub const INVOLUTION_BUDGET: f64 = 10.0;
pub const GNOMONIC_BUDGET: f64 = 30.0;
pub const KUBOTA_FUNCTIONS_BUDGET: f64 = 60.0;

/// A suite with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteSpec {
    pub id: String,
    pub seed: u64,
    /// Overrides the Monte Carlo sample size of the stochastic suites.
    pub samples: Option<usize>,
    pub threads: usize,
    /// Restricts the suite to one of its dimensions.
    pub dim: Option<usize>,
}

impl SuiteSpec {
    /// Fails with a parse error on an unknown id.
    pub fn new(id: &str) -> Result<Self> {
        if !SUITE_IDS.contains(&id) {
            return Err(Error::Parse(format!("unknown suite `{id}`; known: {}", SUITE_IDS.join(", "))));
        }
        Ok(SuiteSpec {
            id: id.to_string(),
            seed: DEFAULT_SEED,
            samples: None,
            threads: 1,
            dim: None,
        })
    }

    fn dims(&self, defaults: &[usize]) -> Result<Vec<usize>> {
        match self.dim {
            None => Ok(defaults.to_vec()),
            Some(n) if defaults.contains(&n) => Ok(vec![n]),
            Some(n) => Err(Error::InvalidArgument(format!("suite {} runs in dimensions {defaults:?}, not {n}", self.id))),
        }
    }

    fn mc(&self, default_samples: usize) -> McConfig {
        McConfig::new(self.seed, self.samples.unwrap_or(default_samples)).with_threads(self.threads)
    }

    fn sampler(&self, stream: u64) -> Sampler {
        Sampler::new(self.seed, stream)
    }
}

/// Runs the named suite.
pub fn run_suite(spec: &SuiteSpec) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = match spec.id.as_str() {
        "legendre-involution" => legendre_involution(spec),
        "ma-dual-route" => ma_dual_route(spec),
        "mixed-volume" => mixed_volume_suite(spec),
        "ma-bodies" => ma_bodies(spec),
        "gnomonic" => gnomonic(spec),
        "kubota-bodies" => kubota_bodies_suite(spec),
        "kubota-functions" => kubota_functions_suite(spec),
        "restriction" => restriction(spec),
        "nesting-bodies" => nesting_bodies(spec),
        "steiner-bridge" => steiner_bridge(spec),
        "support-nesting-ma" => support_nesting_suite(spec),
        other => Err(Error::Parse(format!("unknown suite `{other}`"))),
    }?;
    let elapsed = start.elapsed().as_secs_f64();
    report.metric("runtime_s", elapsed);
    let budget = match spec.id.as_str() {
        "legendre-involution" => Some(INVOLUTION_BUDGET),
        "gnomonic" => Some(GNOMONIC_BUDGET),
        "kubota-functions" => Some(KUBOTA_FUNCTIONS_BUDGET),
        _ => None,
    };
    if let Some(b) = budget {
        if elapsed > b {
            report.fail(json!({ "runtime_s": elapsed, "budget_s": b }));
        }
    }
    Ok(report)
}

fn new_report(theorem: &str, spec: &SuiteSpec, inputs: serde_json::Value) -> VerificationReport {
    VerificationReport::new(theorem, inputs).with_seed(spec.seed)
}

fn compare_measures(
    report: &mut VerificationReport,
    a: &DiscreteMeasure,
    b: &DiscreteMeasure,
    loc_tol: f64,
    rel_tol: f64,
    label: impl Fn() -> serde_json::Value,
) {
    let d = a.diff(b);
    report.metric_max("max_location_error", d.max_location_error);
    report.metric_max("max_weight_error", d.max_weight_error);
    report.metric_max("max_unmatched_weight", d.max_unmatched_weight);
    report.metric_max("max_compared_mass", a.total_mass().max(b.total_mass()));
    report.metric_min("min_compared_mass", a.total_mass().min(b.total_mass()));
    report.check(a.agrees_with(b, loc_tol, rel_tol), || json!({ "case": label(), "diff": d }));
}

/// The corpus of criteria 1 and 2: finite PL functions in dimensions 1, 2, 3
/// with at most [`MAX_PIECES`] pieces.
pub fn finite_corpus(seed: u64, dims: &[usize]) -> Result<Vec<PLConvexFunction>> {
    let mut s = Sampler::new(seed, 1);
    (0..CORPUS_SIZE)
        .map(|i| {
            let n = dims[i % dims.len()];
            let pieces = 2 + i % (MAX_PIECES - 1);
            random_pl_function(n, pieces, &mut s)
        })
        .collect()
}

fn legendre_involution(spec: &SuiteSpec) -> Result<VerificationReport> {
    let dims = spec.dims(&[1, 2, 3])?;
    let mut report = new_report(
        "legendre-involution",
        spec,
        json!({ "functions": CORPUS_SIZE, "dims": dims, "grid": INVOLUTION_GRID, "tol": INVOLUTION_TOL }),
    );
    let mut grid_sampler = spec.sampler(2);
    for (i, v) in finite_corpus(spec.seed, &dims)?.iter().enumerate() {
        let back = v.legendre()?.legendre()?;
        let mut worst: f64 = 0.0;
        for _ in 0..INVOLUTION_GRID {
            let x = point_in_box(v.dim(), 3.0, &mut grid_sampler);
            worst = worst.max((back.evaluate(&x) - v.evaluate(&x)).abs());
        }
        report.metric_max("max_deviation", worst);
        report.check(worst <= INVOLUTION_TOL, || json!({ "function": i, "deviation": worst }));
    }
    Ok(report)
}

fn ma_dual_route(spec: &SuiteSpec) -> Result<VerificationReport> {
    let dims = spec.dims(&[1, 2, 3])?;
    let mut report = new_report(
        "ma-dual-route",
        spec,
        json!({ "functions": CORPUS_SIZE, "dims": dims, "location_tol": MA_LOCATION_TOL, "weight_tol": MA_WEIGHT_TOL, "mass_tol": MASS_TOL }),
    );
    for (i, v) in finite_corpus(spec.seed, &dims)?.iter().enumerate() {
        let lifted = ma_measure_lifted(v)?;
        let vertex = ma_measure_vertices(v)?;
        compare_measures(&mut report, &lifted, &vertex, MA_LOCATION_TOL, MA_WEIGHT_TOL, || json!(i));
        let dual = v.legendre()?;
        let dom = dual.domain().expect("conjugate of a finite function has a domain");
        let expected = if dom.is_full_dimensional() { dom.volume() } else { 0.0 };
        let err = (lifted.total_mass() - expected).abs();
        report.metric_max("max_mass_error", err);
        report.check(err <= MASS_TOL * expected.max(1.0), || {
            json!({ "function": i, "mass": lifted.total_mass(), "domain_volume": expected })
        });
    }
    Ok(report)
}

fn mixed_volume_suite(spec: &SuiteSpec) -> Result<VerificationReport> {
    let mut report = new_report(
        "mixed-volume",
        spec,
        json!({ "triples": 100, "dim": 3, "route_tol": MIXED_VOLUME_TOL, "segment_tol": SEGMENT_TOL }),
    );
    let mut s = spec.sampler(1);
    for i in 0..100 {
        let bodies: Vec<Polytope> = (0..3).map(|k| random_polytope(3, 4 + (i + k) % 4, &mut s)).collect::<Result<_>>()?;
        let (a, b) = mixed_volume_routes(&bodies)?;
        let rel = (a - b).abs() / a.abs().max(b.abs()).max(1e-300);
        report.metric_max("max_route_relative_error", rel);
        report.check(rel <= MIXED_VOLUME_TOL, || json!({ "triple": i, "volume_route": a, "integral_route": b }));
    }
    for n in 2..=4 {
        let segs: Vec<Polytope> = (0..n)
            .map(|i| Polytope::segment(vec![0.0; n], linalg::unit(n, i)))
            .collect::<Result<_>>()?;
        let v = mixed_volume(&segs)?;
        let err = (v - 1.0 / factorial(n)).abs();
        report.metric_max("max_segment_error", err);
        report.check(err <= SEGMENT_TOL, || json!({ "n": n, "value": v }));
    }
    Ok(report)
}

fn ma_bodies(spec: &SuiteSpec) -> Result<VerificationReport> {
    let dims = spec.dims(&[2, 3])?;
    let mut report = new_report("ma-bodies", spec, json!({ "tuples": 50, "dims": dims, "tol": MA_BODIES_TOL }));
    let mut s = spec.sampler(1);
    for i in 0..50 {
        let n = dims[i % dims.len()];
        let bodies: Vec<Polytope> = (0..n).map(|_| random_polytope(n, n + 2, &mut s)).collect::<Result<_>>()?;
        let hs: Vec<PLConvexFunction> = bodies.iter().map(PLConvexFunction::support_function).collect();
        let m = mixed_ma(&hs)?;
        let v = mixed_volume(&bodies)?;
        let at_origin = m.atoms().len() == 1 && linalg::norm(&m.atoms()[0].loc) <= MA_LOCATION_TOL;
        let err = (m.total_mass() - v).abs() / v.max(1e-12);
        report.metric_max("max_relative_error", err);
        report.check(at_origin && err <= MA_BODIES_TOL, || {
            json!({ "tuple": i, "n": n, "atoms": m.atoms(), "mixed_volume": v })
        });
    }
    Ok(report)
}

fn gnomonic(spec: &SuiteSpec) -> Result<VerificationReport> {
    let dims = spec.dims(&[1, 2, 3])?;
    let mut report = new_report("gnomonic", spec, json!({ "functions": 20, "dims": dims, "tol": GNOMONIC_TOL }));
    let mut s = spec.sampler(1);
    for i in 0..20 {
        let n = dims[i % dims.len()];
        let us: Vec<PLConvexFunction> = (0..n).map(|_| random_compact_pl_function(n, 3, &mut s)).collect::<Result<_>>()?;
        let diag = vec![us[0].clone(); n];
        let lhs = gnomonic_transfer(&epigraph_body(&us[0])?)?;
        compare_measures(&mut report, &lhs, &conj_ma(&diag)?, GNOMONIC_TOL, GNOMONIC_TOL, || {
            json!({ "case": i, "n": n, "form": "diagonal" })
        });
        if n > 1 {
            let bodies: Vec<Polytope> = us.iter().map(epigraph_body).collect::<Result<_>>()?;
            let refs: Vec<&Polytope> = bodies.iter().collect();
            let lhs = gnomonic_transfer_measure(&mixed_area_measure_in(n + 1, &refs)?)?;
            compare_measures(&mut report, &lhs, &conj_ma(&us)?, GNOMONIC_TOL, GNOMONIC_TOL, || {
                json!({ "case": i, "n": n, "form": "mixed" })
            });
        }
    }
    Ok(report)
}

/// The non-constant integrand of criterion 6.
pub const KUBOTA_WEIGHT_DIRECTION: [f64; 3] = [0.3, -0.2, 0.4];

fn quadratic_weight(u: &[f64]) -> f64 {
    (1.0 + linalg::dot(u, &KUBOTA_WEIGHT_DIRECTION)).powi(2)
}

fn kubota_bodies_suite(spec: &SuiteSpec) -> Result<VerificationReport> {
    spec.dims(&[3])?;
    let cfg = spec.mc(KUBOTA_BODIES_SAMPLES);
    let mut report = new_report(
        "kubota-bodies",
        spec,
        json!({ "n": 3, "k": 1, "samples": cfg.samples, "polygon_vertices": 4 * POLYGON_REFINEMENT, "sigmas": SIGMAS }),
    );
    let mut s = spec.sampler(1);
    let simplex = random_simplex(3, &mut s)?;
    let bodies = [
        ("cube", Polytope::unit_cube(3)),
        ("simplex", simplex.clone()),
        ("vertical-segment", Polytope::segment(vec![0.0; 3], vec![0.0, 0.0, 1.0])?),
    ];
    type Weight = fn(&[f64]) -> f64;
    let weights: [(&str, Weight); 2] = [("one", |_| 1.0), ("quadratic", quadratic_weight)];
    let mut estimates = serde_json::Map::new();
    for (name, body) in &bodies {
        for (wname, f) in &weights {
            let est = kubota_bodies(f, std::slice::from_ref(body), &cfg)?;
            let base = kubota_bodies_baseline(f, std::slice::from_ref(body), POLYGON_REFINEMENT)?;
            let ok = est.within(base.value, SIGMAS, base.error);
            estimates.insert(format!("{name}/{wname}"), json!({ "estimate": est, "baseline": base }));
            report.check(ok, || json!({ "body": name, "weight": wname, "estimate": est, "baseline": base }));
        }
    }
    // k = n - 1: E is the whole space and the estimator is exact
    let pair = vec![Polytope::unit_cube(3), simplex];
    for (wname, f) in &weights {
        let est = kubota_bodies(f, &pair, &cfg)?;
        let exact = mixed_area_measure(&pair)?.integrate(f);
        report.check(est.stderr == 0.0 && est.mean == exact, || {
            json!({ "case": "top-index", "weight": wname, "estimate": est, "exact": exact })
        });
    }
    report.metric("estimates", serde_json::Value::Object(estimates));
    Ok(report)
}

fn kubota_functions_suite(spec: &SuiteSpec) -> Result<VerificationReport> {
    spec.dims(&[3])?;
    let cfg = spec.mc(KUBOTA_FUNCTIONS_SAMPLES);
    let mut report = new_report(
        "kubota-functions",
        spec,
        json!({ "function": "support function of [0,1]^3", "density": "hat of radius 2", "samples": cfg.samples, "sigmas": SIGMAS }),
    );
    let v = PLConvexFunction::support_function(&Polytope::unit_cube(3));
    let alpha = RadialDensity::hat(2.0)?;
    for j in 0..=3 {
        let est = functional_intrinsic_volume(&v, j, &alpha, &cfg)?;
        let target = binomial(3, j) * alpha.eval(0.0);
        let ok = match j {
            0 => est.mean == alpha.eval(0.0) && est.stderr == 0.0,
            3 => (est.mean - target).abs() <= 1e-12 && est.stderr == 0.0,
            _ => est.within(target, SIGMAS, 0.0),
        };
        report.metric(&format!("j{j}"), json!(est));
        report.check(ok, || json!({ "j": j, "estimate": est, "target": target }));
    }
    Ok(report)
}

/// Pushes a measure on `E` (frame coordinates) into the ambient space.
fn push_measure(m: &DiscreteMeasure, e: &Subspace) -> DiscreteMeasure {
    m.map(MeasureKind::Point, e.ambient_dim(), |y| e.push(y))
}

fn restriction(spec: &SuiteSpec) -> Result<VerificationReport> {
    let dims = spec.dims(&[2, 3])?;
    let mut report = new_report("restriction", spec, json!({ "tuples": 20, "dims": dims, "tol": RESTRICTION_TOL }));
    let mut s = spec.sampler(1);
    for i in 0..20 {
        let n = dims[i % dims.len()];
        let j = 1 + (i / dims.len()) % (n - 1);
        let rot = sample_rotation(n, &mut s);
        let e = Subspace::new(n, (0..j).map(|c| column(&rot, c)).collect())?;
        let zs: Vec<Point> = (j..n).map(|c| column(&rot, c)).collect();
        let us: Vec<PLConvexFunction> = (0..j).map(|_| random_compact_pl_function(n, 3, &mut s)).collect::<Result<_>>()?;
        let ratio = factorial(n) / factorial(j);
        let label = |form: &'static str| move || json!({ "tuple": i, "n": n, "j": j, "form": form });

        // conjugate form with indicators of segments
        let mut slots = us.clone();
        for z in &zs {
            slots.push(PLConvexFunction::indicator(&Polytope::segment(vec![0.0; n], z.clone())?));
        }
        let lhs = conj_ma(&slots)?.scaled(ratio);
        let projected: Vec<PLConvexFunction> = us.iter().map(|u| u.project(&e)).collect::<Result<_>>()?;
        let rhs = push_measure(&conj_ma(&projected)?, &e);
        compare_measures(&mut report, &lhs, &rhs, RESTRICTION_TOL, RESTRICTION_TOL, label("conjugate"));

        // dual form with support functions of segments
        let vs: Vec<PLConvexFunction> = us.iter().map(|u| u.legendre()).collect::<Result<_>>()?;
        let mut slots = vs.clone();
        for z in &zs {
            slots.push(PLConvexFunction::support_function(&Polytope::segment(vec![0.0; n], z.clone())?));
        }
        let lhs = mixed_ma(&slots)?.scaled(ratio);
        let restricted: Vec<PLConvexFunction> = vs.iter().map(|v| v.restrict(&e)).collect::<Result<_>>()?;
        let rhs = push_measure(&mixed_ma(&restricted)?, &e);
        compare_measures(&mut report, &lhs, &rhs, RESTRICTION_TOL, RESTRICTION_TOL, label("dual"));

        // single-function form: n MA*(u[n-1], I_{[o,e]}) = MA*_E(proj_E u), E = e^⊥
        let en = &column(&rot, n - 1);
        let hyper = Subspace::new(n, (0..n - 1).map(|c| column(&rot, c)).collect())?;
        let mut slots = vec![us[0].clone(); n - 1];
        slots.push(PLConvexFunction::indicator(&Polytope::segment(vec![0.0; n], en.clone())?));
        let lhs = conj_ma(&slots)?.scaled(n as f64);
        let proj = us[0].project(&hyper)?;
        let rhs = push_measure(&conj_ma(&vec![proj; n - 1])?, &hyper);
        compare_measures(&mut report, &lhs, &rhs, RESTRICTION_TOL, RESTRICTION_TOL, label("single"));
    }
    Ok(report)
}

fn nesting_bodies(spec: &SuiteSpec) -> Result<VerificationReport> {
    let dims = spec.dims(&[3, 4])?;
    let mut report = new_report("nesting-bodies", spec, json!({ "polytopes_per_dim": 20, "dims": dims }));
    let mut s = spec.sampler(1);
    let mut directions = 0usize;
    for &n in &dims {
        for i in 0..20 {
            let p = random_polytope(n, n + 2 + i % 4, &mut s)?;
            let dirs = witness_directions(&p)?;
            directions += dirs.len();
            for z in &dirs {
                for j in 1..n {
                    let a = is_mixed_extreme_ball(&p, z, j)?;
                    let b = support_membership_via_projections(&p, z, j)?;
                    report.check(a == b, || {
                        json!({ "n": n, "polytope": i, "direction": z, "j": j, "touching_space": a, "projection": b })
                    });
                }
            }
            for k in 1..n {
                for j in 1..=k {
                    let mut sub = nesting_check(&p, j, k)?;
                    sub.violations.iter_mut().for_each(|v| {
                        *v = json!({ "n": n, "polytope": i, "j": j, "k": k, "witness": v.clone() });
                    });
                    report.absorb(sub);
                }
            }
        }
    }
    report.metric("directions", directions);
    Ok(report)
}

/// Polyhedral cap of angular radius `alpha` around the unit vector `nu` (`n = 2, 3`).
pub fn polyhedral_cap(nu: &[f64], alpha: f64) -> SphericalPolytope {
    let n = nu.len();
    let perp = linalg::orthogonal_complement(&[nu.to_vec()], n);
    let sides: Vec<Point> = match n {
        2 => vec![perp[0].clone(), linalg::scale(&perp[0], -1.0)],
        _ => (0..3)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                linalg::add(&linalg::scale(&perp[0], t.cos()), &linalg::scale(&perp[1], t.sin()))
            })
            .collect(),
    };
    let normals = sides
        .iter()
        .map(|w| linalg::add(&linalg::scale(nu, alpha.sin()), &linalg::scale(w, alpha.cos())))
        .collect();
    SphericalPolytope::closed(normals)
}

fn steiner_bridge(spec: &SuiteSpec) -> Result<VerificationReport> {
    let dims = spec.dims(&[2, 3])?;
    let mut report = new_report("steiner-bridge", spec, json!({ "polytopes_per_dim": 5, "dims": dims, "tol": STEINER_TOL }));
    let mut s = spec.sampler(1);
    for &n in &dims {
        for i in 0..5 {
            let p = random_polytope(n, n + 3, &mut s)?;
            let area = surface_area_measure(&p);
            let scale = area.total_mass().max(1.0);
            let mut centres: Vec<Point> = p.facets().iter().map(|f| f.normal.clone()).collect();
            centres.push(s.unit_vector(n));
            for nu in centres {
                let alpha = 0.05 + 0.55 * s.uniform();
                let cap = polyhedral_cap(&nu, alpha);
                let lhs = area.mass_where(|u| cap.contains(u));
                let sel = ConeSelector::hat(n, vec![cap]);
                let rhs = n as f64 * mixed_ma_bodies_q(&vec![p.clone(); n - 1], &sel)?;
                let err = (lhs - rhs).abs() / scale;
                report.metric_max("max_cap_error", err);
                report.check(err <= STEINER_TOL, || json!({ "n": n, "polytope": i, "centre": nu, "alpha": alpha, "area": lhs, "ma": rhs }));
            }
            let coeffs = parallel_polynomial(&p, &ConeSelector::origin_and_sphere(n))?;
            // c_0 is the volume term; c_1..c_n carry the k <= n - 1 mixed values
            let vol = p.volume();
            let worst = coeffs[1..].iter().map(|c| c.abs()).fold(0.0, f64::max) / vol.max(1.0);
            let vol_err = (coeffs[0] - vol).abs() / vol.max(1.0);
            report.metric_max("max_vanishing_coefficient", worst);
            report.metric_max("max_volume_coefficient_error", vol_err);
            report.check(worst <= STEINER_TOL && vol_err <= STEINER_TOL, || {
                json!({ "n": n, "polytope": i, "coefficients": coeffs, "volume": vol })
            });
        }
    }
    Ok(report)
}

fn support_nesting_suite(spec: &SuiteSpec) -> Result<VerificationReport> {
    let dims = spec.dims(&[2, 3])?;
    let mut report = new_report("support-nesting-ma", spec, json!({ "dims": dims, "random_maxima": 2, "pieces": 6 }));
    let mut s = spec.sampler(1);
    for &n in &dims {
        let mut fs = vec![("norm-inf".to_string(), PLConvexFunction::norm_inf(n))];
        for r in 0..2 {
            fs.push((format!("random-{r}"), random_coercive_dual(n, 6, &mut s)?));
        }
        fs.push(("affine".to_string(), PLConvexFunction::affine(point_in_box(n, 1.0, &mut s), s.uniform())));
        for (name, v) in &fs {
            let witnesses = default_witnesses(v)?;
            for k in 1..=n {
                for j in 1..=k {
                    let mut sub = support_nesting_ma(v, j, k, &witnesses)?;
                    sub.violations.iter_mut().for_each(|w| {
                        *w = json!({ "n": n, "function": name, "j": j, "k": k, "witness": w.clone() });
                    });
                    report.absorb(sub);
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_a_parse_error() {
        assert!(SuiteSpec::new("no-such-suite").unwrap_err().is_parse());
    }

    #[test]
    fn dimension_override_must_be_supported() {
        let mut spec = SuiteSpec::new("ma-bodies").unwrap();
        spec.dim = Some(5);
        assert!(run_suite(&spec).is_err());
    }

    #[test]
    fn cap_contains_its_centre_only_nearby() {
        let cap = polyhedral_cap(&[0.0, 0.0, 1.0], 0.3);
        assert!(cap.contains(&[0.0, 0.0, 1.0]));
        assert!(!cap.contains(&[1.0, 0.0, 0.0]));
    }
}
