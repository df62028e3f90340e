//! Calculus of piecewise-linear convex functions.

pub mod complex;
pub mod function;
pub(crate) mod lifted;
pub mod ma;

pub use complex::{Cell, Complex};
pub use function::{epi_scale, inf_convolution, legendre, project_fn, restrict, subdifferential, PLConvexFunction, Piece};
pub use ma::{
    conj_ma, epigraph_body, gnomonic_transfer, gnomonic_transfer_measure, ma_measure, ma_measure_lifted,
    ma_measure_vertices, mixed_ma,
};
