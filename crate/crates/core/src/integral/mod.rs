//! Haar sampling, Kubota-type Monte Carlo estimators and functional supports.

mod functional;
mod haar;
mod kubota;
mod nesting;
mod sampler;

pub use functional::{
    functional_intrinsic_volume, sphere_segment_average, sphere_segment_baseline, MixedVolumeFunctional,
    RadialDensity,
};
pub use haar::{column, sample_grassmann, sample_grassmann_through_line, sample_rotation};
pub use kubota::{kubota_bodies, kubota_bodies_baseline, kubota_functions};
pub use nesting::{
    default_witnesses, is_extreme_point, restricted_support_contains, restriction_witness, support_nesting_ma,
    GRID_STEP,
};
pub use sampler::{pairwise_sum, run, MCEstimate, McConfig, Sampler, BLOCK, DEFAULT_SEED};
