//! Polyhedral subdivision of the domain induced by a PL function.

use crate::error::Result;
use crate::geom::Polytope;
use crate::linalg::Point;

use super::function::PLConvexFunction;

/// A maximal cell: the region where one piece is maximal.
#[derive(Clone, Debug)]
pub struct Cell {
    pub vertices: Vec<Point>,
    /// Gradient of the function on the cell.
    pub gradient: Point,
    /// Volume relative to the region's affine hull.
    pub volume: f64,
}

#[derive(Clone, Debug)]
pub struct Complex {
    pub region: Polytope,
    /// 0-cells with the function values there.
    pub vertices: Vec<(Point, f64)>,
    pub cells: Vec<Cell>,
}

impl Complex {
    /// Complex of a function with a domain; for a finite function, the
    /// complex of its conjugate on `conv{a_i}`.
    pub fn of(f: &PLConvexFunction) -> Result<Complex> {
        if f.is_finite() {
            return Complex::of(&f.legendre()?);
        }
        let region = f.domain().expect("domain present").clone();
        let vertices = f.complex_vertices()?;
        let k = region.dim();
        let cells = f
            .pieces()
            .iter()
            .filter_map(|p| {
                let pts: Vec<Point> = vertices
                    .iter()
                    .filter(|(x, v)| v - p.eval(x) <= 1e-9 * (1.0 + v.abs()))
                    .map(|(x, _)| x.clone())
                    .collect();
                let cell = Polytope::from_points(&pts).ok()?;
                let volume = if cell.dim() == k { cell.relative_volume() } else { 0.0 };
                Some(Cell {
                    vertices: cell.vertices().to_vec(),
                    gradient: p.a.clone(),
                    volume,
                })
            })
            .collect();
        Ok(Complex {
            region,
            vertices,
            cells,
        })
    }

    pub fn total_volume(&self) -> f64 {
        self.cells.iter().map(|c| c.volume).sum()
    }
}
