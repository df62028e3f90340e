//! Exact low-dimensional polytope calculus.

pub mod ball;
pub mod faces;
pub mod halfspace;
pub(crate) mod hull;
pub mod polytope;
pub mod subspace;

pub use ball::{ball_approx, BallApprox};
pub use faces::{faces, Face, FaceLattice};
pub use halfspace::vertices_from_halfspaces;
pub use polytope::{hull, minkowski_combination, minkowski_sum, project, support_function, volume, Facet, Polytope};
pub use subspace::Subspace;
