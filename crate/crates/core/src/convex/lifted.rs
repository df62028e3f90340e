//! Lower convex hull of lifted gradients `(a_i, b_i)`.
//!
//! Its facets are the cells of the regular subdivision of `conv{a_i}`; each
//! lower facet is a piece of the conjugate and a vertex of the primal complex.

use crate::error::Result;
use crate::geom::Polytope;
use crate::linalg::{self, Point};

/// Lower facets with `|ν_t|` below this are treated as vertical.
const VERTICAL_TOL: f64 = 1e-10;

/// One cell of the regular subdivision.
#[derive(Clone, Debug)]
pub(crate) struct LowerFacet {
    /// Slope of the conjugate on the cell, in ambient coordinates; equals the
    /// primal point where the cell's pieces are simultaneously maximal.
    pub slope: Point,
    /// The conjugate is `<slope, ξ> - offset` on the cell.
    pub offset: f64,
    /// Volume of the cell in the affine hull of `conv{a_i}`.
    pub volume: f64,
}

#[derive(Clone, Debug)]
pub(crate) struct LowerHull {
    /// `conv{a_i}`.
    pub hull: Polytope,
    pub facets: Vec<LowerFacet>,
    /// Lifted points that are vertices of the lower hull, sorted.
    pub vertices: Vec<usize>,
}

impl LowerHull {
    pub fn dim(&self) -> usize {
        self.hull.dim()
    }
}

pub(crate) fn lower_hull(a: &[Point], b: &[f64]) -> Result<LowerHull> {
    let hull = Polytope::from_points(a)?;
    let d = hull.dim();
    let n = a[0].len();
    if d == 0 {
        let best = (0..b.len()).min_by(|&i, &j| b[i].total_cmp(&b[j])).expect("nonempty");
        return Ok(LowerHull {
            hull,
            facets: vec![LowerFacet {
                slope: vec![0.0; n],
                offset: -b[best],
                volume: 1.0,
            }],
            vertices: vec![best],
        });
    }
    let lifted: Vec<Point> = a
        .iter()
        .zip(b)
        .map(|(ai, bi)| {
            let mut y = hull.to_local(ai);
            y.push(*bi);
            y
        })
        .collect();
    let locals: Vec<Point> = lifted.iter().map(|p| p[..d].to_vec()).collect();
    let mut top = linalg::centroid(&locals);
    let bmax = b.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let bmin = b.iter().cloned().fold(f64::INFINITY, f64::min);
    top.push(bmax + 1.0 + (bmax - bmin));
    let mut pts = lifted.clone();
    pts.push(top);
    let up = Polytope::from_points(&pts)?;
    let index_of = |v: &Point| lifted.iter().position(|p| p == v);
    let origin = hull.frame_origin().to_vec();
    let basis = hull.direction_basis().to_vec();
    let mut facets = Vec::new();
    let mut verts: Vec<usize> = Vec::new();
    for f in up.facets() {
        let nt = f.normal[d];
        if nt >= -VERTICAL_TOL {
            continue;
        }
        let s: Point = f.normal[..d].iter().map(|x| x / -nt).collect();
        let c = f.offset / -nt;
        let slope = linalg::combine(&s, &basis, n);
        let offset = c + linalg::dot(&slope, &origin);
        let mut pieces: Vec<usize> = f.vertices.iter().filter_map(|&v| index_of(&up.vertices()[v])).collect();
        pieces.sort_unstable();
        verts.extend(&pieces);
        facets.push(LowerFacet {
            slope,
            offset,
            volume: f.area * -nt,
        });
    }
    verts.sort_unstable();
    verts.dedup();
    Ok(LowerHull {
        hull,
        facets,
        vertices: verts,
    })
}
