//! Normal-fan combinatorics and support characterizations for polytopes.

pub mod extreme;
pub mod fan;

pub use extreme::{
    is_mixed_extreme_ball, nesting_check, projection_witness, support_membership_via_projections, witness_directions,
};
pub use fan::{is_r_extreme, normal_fan, touching_cone, NormalCone, NormalFan, TouchingCone};
