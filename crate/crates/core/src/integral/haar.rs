//! Haar-distributed rotations and subspaces.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::geom::Subspace;
use crate::linalg::Point;

use super::sampler::Sampler;

/// Haar rotation in `SO(n)` as a list of rows.
///
/// QR of a Gaussian matrix with `diag R > 0` is Haar on `O(n)`; flipping the
/// first column when `det < 0` maps it to Haar on `SO(n)`.
pub fn sample_rotation(n: usize, sampler: &mut Sampler) -> Vec<Point> {
    if n == 0 {
        return Vec::new();
    }
    let g = DMatrix::from_fn(n, n, |_, _| sampler.gaussian());
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    (0..n).map(|i| q.row(i).iter().cloned().collect()).collect()
}

/// Column `j` of a matrix stored by rows.
pub fn column(rows: &[Point], j: usize) -> Point {
    rows.iter().map(|r| r[j]).collect()
}

fn check_range(lo: usize, k: usize, n: usize) -> Result<()> {
    if k < lo || k > n {
        return Err(Error::InvalidArgument(format!("subspace dimension {k} must lie in {lo}..={n}")));
    }
    Ok(())
}

/// Haar element of `G(j, n)`: the span of the first `j` columns of a Haar rotation.
pub fn sample_grassmann(j: usize, n: usize, sampler: &mut Sampler) -> Result<Subspace> {
    check_range(1, j, n)?;
    let rot = sample_rotation(n, sampler);
    Subspace::new(n, (0..j).map(|c| column(&rot, c)).collect())
}

/// Haar element of `G(ℓ, k)`, `ℓ = lin{e_n}`: `F + ℓ` with `F` Haar in `G(L, k - 1)`.
///
/// The frame lists `F` first and `e_n` last.
pub fn sample_grassmann_through_line(k: usize, n: usize, sampler: &mut Sampler) -> Result<Subspace> {
    check_range(1, k, n)?;
    let rot = sample_rotation(n - 1, sampler);
    let mut frame: Vec<Point> = (0..k - 1)
        .map(|c| {
            let mut v = column(&rot, c);
            v.push(0.0);
            v
        })
        .collect();
    let mut en = vec![0.0; n];
    en[n - 1] = 1.0;
    frame.push(en);
    Subspace::new(n, frame)
}
