//! JSON file formats and the fixed-precision JSON writer.
//!
//! Floats are written with 17 significant digits so that every value
//! round-trips exactly; the writer is deterministic.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::convex::{PLConvexFunction, Piece};
use crate::error::{Error, Result};
use crate::geom::{Polytope, Subspace};
use crate::linalg::Point;
use crate::measure::{Atom, DiscreteMeasure, MeasureKind};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeFile {
    dim: usize,
    vertices: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubspaceFile {
    dim: usize,
    frame: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureFile {
    kind: MeasureKind,
    #[serde(default)]
    dim: Option<usize>,
    atoms: Vec<Atom>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceFile {
    a: Point,
    b: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionFile {
    dim: usize,
    pieces: Vec<PieceFile>,
    #[serde(default)]
    domain: Option<PolytopeFile>,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn check_points(dim: usize, pts: &[Point], what: &str) -> Result<()> {
    for p in pts {
        if p.len() != dim {
            return Err(Error::Parse(format!("{what} has length {}, expected {dim}", p.len())));
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::Parse(format!("{what} has a non-finite coordinate")));
        }
    }
    Ok(())
}

fn polytope_from_file(f: PolytopeFile) -> Result<Polytope> {
    if f.vertices.is_empty() {
        return Err(Error::Parse("polytope has no vertices".into()));
    }
    check_points(f.dim, &f.vertices, "vertex")?;
    Polytope::from_points(&f.vertices)
}

pub fn polytope_from_value(v: Value) -> Result<Polytope> {
    polytope_from_file(serde_json::from_value(v).map_err(parse_err)?)
}

pub fn parse_polytope(text: &str) -> Result<Polytope> {
    polytope_from_value(serde_json::from_str(text).map_err(parse_err)?)
}

pub fn polytope_to_value(p: &Polytope) -> Value {
    json!({ "dim": p.ambient_dim(), "vertices": p.vertices() })
}

pub fn parse_subspace(text: &str) -> Result<Subspace> {
    let f: SubspaceFile = serde_json::from_str(text).map_err(parse_err)?;
    check_points(f.dim, &f.frame, "frame vector")?;
    Subspace::new(f.dim, f.frame).map_err(parse_err)
}

pub fn subspace_to_value(e: &Subspace) -> Value {
    json!({ "dim": e.ambient_dim(), "frame": e.frame() })
}

pub fn parse_measure(text: &str) -> Result<DiscreteMeasure> {
    let f: MeasureFile = serde_json::from_str(text).map_err(parse_err)?;
    let dim = match (f.dim, f.atoms.first()) {
        (Some(d), _) => d,
        (None, Some(a)) => a.loc.len(),
        (None, None) => return Err(Error::Parse("empty measure needs \"dim\"".into())),
    };
    let locs: Vec<Point> = f.atoms.iter().map(|a| a.loc.clone()).collect();
    check_points(dim, &locs, "atom location")?;
    Ok(DiscreteMeasure::from_atoms(f.kind, dim, f.atoms))
}

pub fn measure_to_value(m: &DiscreteMeasure) -> Value {
    json!({ "kind": m.kind(), "dim": m.dim(), "atoms": m.atoms() })
}

pub fn function_from_value(v: Value) -> Result<PLConvexFunction> {
    let f: FunctionFile = serde_json::from_value(v).map_err(parse_err)?;
    if f.pieces.is_empty() {
        return Err(Error::Parse("function has no pieces".into()));
    }
    let grads: Vec<Point> = f.pieces.iter().map(|p| p.a.clone()).collect();
    check_points(f.dim, &grads, "gradient")?;
    let domain = match f.domain {
        None => None,
        Some(d) => {
            if d.dim != f.dim {
                return Err(Error::Parse(format!("domain dimension {} differs from {}", d.dim, f.dim)));
            }
            Some(polytope_from_file(d)?)
        }
    };
    let pieces = f.pieces.into_iter().map(|p| Piece::new(p.a, p.b)).collect();
    PLConvexFunction::new(f.dim, pieces, domain)
}

pub fn parse_function(text: &str) -> Result<PLConvexFunction> {
    function_from_value(serde_json::from_str(text).map_err(parse_err)?)
}

pub fn function_to_value(f: &PLConvexFunction) -> Value {
    let pieces: Vec<Value> = f.pieces().iter().map(|p| json!({ "a": p.a, "b": p.b })).collect();
    json!({
        "dim": f.dim(),
        "pieces": pieces,
        "domain": f.domain().map(polytope_to_value),
    })
}

/// Compact JSON with every float printed as `{:.16e}`.
pub fn to_json_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, &mut out);
    out
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().expect("f64 number");
                out.push_str(&format!("{x:.16e}"));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_value(item, out);
            }
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polytope_round_trip() {
        let p = Polytope::standard_simplex(3);
        let text = to_json_string(&polytope_to_value(&p));
        let q = parse_polytope(&text).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn floats_keep_seventeen_digits() {
        let s = to_json_string(&json!({ "x": 0.1, "n": 3 }));
        assert_eq!(s, "{\"n\":3,\"x\":1.0000000000000001e-1}");
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["x"].as_f64().unwrap(), 0.1);
    }

    #[test]
    fn function_round_trip_with_domain() {
        let f = PLConvexFunction::indicator(&Polytope::unit_cube(2));
        let g = parse_function(&to_json_string(&function_to_value(&f))).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn measure_round_trip() {
        let m = DiscreteMeasure::dirac(MeasureKind::Point, vec![0.5, -1.0], 2.0);
        let back = parse_measure(&to_json_string(&measure_to_value(&m))).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn malformed_inputs_are_parse_errors() {
        assert!(parse_polytope("{\"dim\": 2, \"vertices\": [[0, 0], [1]]}").unwrap_err().is_parse());
        assert!(parse_polytope("{\"dim\": 2}").unwrap_err().is_parse());
        assert!(parse_polytope("not json").unwrap_err().is_parse());
        assert!(parse_function("{\"dim\": 1, \"pieces\": []}").unwrap_err().is_parse());
        assert!(parse_subspace("{\"dim\": 2, \"frame\": [[1, 1]]}").unwrap_err().is_parse());
    }

    #[test]
    fn subspace_round_trip() {
        let e = Subspace::coordinate(3, &[0, 2]);
        let back = parse_subspace(&to_json_string(&subspace_to_value(&e))).unwrap();
        assert_eq!(e, back);
    }
}
