//! Discrete measures on the sphere and in Euclidean space, and the polytopal
//! measures built from them.

pub mod area;
pub mod discrete;
pub mod selector;
pub mod steiner;

pub use area::{
    area_measure_j, intrinsic_volume, mixed_area_measure, mixed_area_measure_in, mixed_volume, mixed_volume_routes,
    surface_area_measure, ApproxMeasure, ApproxValue,
};
pub use discrete::{Atom, AtomwiseDiff, DiscreteMeasure, MeasureKind};
pub use selector::{ConeSelector, SphericalPolytope};
pub use steiner::{local_parallel_ma, mixed_ma_bodies_q, parallel_polynomial};
