//! Subcommand implementations; each returns the process exit code.

use std::path::Path;

use serde_json::{json, Value};

use mixedvol::convex::{conj_ma, ma_measure, mixed_ma, PLConvexFunction};
use mixedvol::geom::Polytope;
use mixedvol::integral::{functional_intrinsic_volume, McConfig, RadialDensity};
use mixedvol::io;
use mixedvol::measure::{intrinsic_volume, mixed_area_measure, mixed_volume, surface_area_measure};
use mixedvol::selftest::run_selftest;
use mixedvol::suites::{run_suite, SuiteSpec};

use crate::{Common, ComputeArgs, Object};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;

/// Default sample size of `compute functional-intrinsic`.
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<mixedvol::Error> for Failure {
    fn from(e: mixedvol::Error) -> Self {
        Failure {
            code: if e.is_parse() { EXIT_USAGE } else { EXIT_DOMAIN },
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn polytopes(files: &[std::path::PathBuf]) -> Result<Vec<Polytope>, Failure> {
    files.iter().map(|f| Ok(io::parse_polytope(&read(f)?)?)).collect()
}

fn functions(files: &[std::path::PathBuf]) -> Result<Vec<PLConvexFunction>, Failure> {
    files.iter().map(|f| Ok(io::parse_function(&read(f)?)?)).collect()
}

fn check_dim(expected: Option<usize>, found: impl IntoIterator<Item = usize>) -> Result<(), Failure> {
    if let Some(n) = expected {
        if let Some(m) = found.into_iter().find(|&m| m != n) {
            return Err(mixedvol::Error::DimensionMismatch { expected: n, found: m }.into());
        }
    }
    Ok(())
}

fn single<T>(mut items: Vec<T>) -> Result<T, Failure> {
    if items.len() != 1 {
        return Err(mixedvol::Error::Arity {
            expected: 1,
            found: items.len(),
        }
        .into());
    }
    Ok(items.remove(0))
}

fn index(args: &ComputeArgs) -> Result<usize, Failure> {
    args.index.ok_or_else(|| usage(format!("{:?} needs --index", args.object)))
}

/// Refinement giving a 128-gon in the plane and small sphere meshes above.
fn default_refinement(n: usize) -> usize {
    match n {
        0..=2 => 32,
        3 => 3,
        _ => 2,
    }
}

fn print(v: &Value) {
    println!("{}", io::to_json_string(v));
}

pub fn compute(args: &ComputeArgs, common: &Common) -> Result<u8, Failure> {
    let value = match args.object {
        Object::MixedVolume | Object::SurfaceMeasure | Object::MixedAreaMeasure | Object::Intrinsic => {
            let bodies = polytopes(&args.files)?;
            check_dim(common.dim, bodies.iter().map(Polytope::ambient_dim))?;
            match args.object {
                Object::MixedVolume => json!({ "value": mixed_volume(&bodies)? }),
                Object::SurfaceMeasure => io::measure_to_value(&surface_area_measure(&single(bodies)?)),
                Object::MixedAreaMeasure => io::measure_to_value(&mixed_area_measure(&bodies)?),
                _ => {
                    let p = single(bodies)?;
                    let refinement = args.refinement.unwrap_or_else(|| default_refinement(p.ambient_dim()));
                    serde_json::to_value(intrinsic_volume(&p, index(args)?, refinement)?).expect("serializable")
                }
            }
        }
        _ => {
            let fs = functions(&args.files)?;
            check_dim(common.dim, fs.iter().map(PLConvexFunction::dim))?;
            match args.object {
                Object::Ma => io::measure_to_value(&ma_measure(&single(fs)?)?),
                Object::MixedMa => io::measure_to_value(&mixed_ma(&fs)?),
                Object::ConjMa => io::measure_to_value(&conj_ma(&fs)?),
                Object::Legendre => io::function_to_value(&single(fs)?.legendre()?),
                _ => {
                    let v = single(fs)?;
                    let alpha = RadialDensity::hat(args.radius)?;
                    let cfg = McConfig::new(common.seed, common.samples.unwrap_or(DEFAULT_SAMPLES))
                        .with_threads(common.threads);
                    let est = functional_intrinsic_volume(&v, index(args)?, &alpha, &cfg)?;
                    serde_json::to_value(est).expect("serializable")
                }
            }
        }
    };
    print(&value);
    Ok(EXIT_OK)
}

pub fn verify(suite: &str, common: &Common) -> Result<u8, Failure> {
    let mut spec = SuiteSpec::new(suite)?;
    spec.seed = common.seed;
    spec.samples = common.samples;
    spec.threads = common.threads;
    spec.dim = common.dim;
    let report = run_suite(&spec)?;
    print(&serde_json::to_value(&report).expect("serializable"));
    Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
}

pub fn selftest(common: &Common) -> u8 {
    let summary = run_selftest();
    if common.json {
        print(&serde_json::to_value(&summary).expect("serializable"));
    } else {
        for c in &summary.checks {
            let note = c.error.as_deref().map(|e| format!("  ({e})")).unwrap_or_default();
            println!("{}  {}{note}", if c.pass { "PASS" } else { "FAIL" }, c.id);
        }
        println!("selftest: {} of {} checks passed", summary.passed, summary.total);
    }
    if summary.pass {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}
