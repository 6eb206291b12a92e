//! Exact moments, cumulants, mod-φ limits and large deviation rate functions
//! for log-volumes of random simplices and parallelotopes in `R^n`.
//!
//! Four isotropic point models are covered: standard Gaussian, Beta in the
//! unit ball, Beta-prime on all of `R^n`, and uniform on the unit sphere.
//! Everything is evaluated in log-space so `n` can reach `10^6`.

pub mod asymptotics;
pub mod cumulants;
pub mod error;
pub mod finite_diff;
pub mod geometry;
pub mod moments;
pub mod rng;
pub mod sampling;
pub mod special;
pub mod stats;

/// Version of this crate, recorded in experiment metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use asymptotics::{
    mod_phi_limit, mod_phi_ratio, rate_function, scaled_cgf_limit, verify_gaussian_limit, verify_volume_limit,
    ConvergenceRow, ModPhiCase, RateFunctionTable, RateSource,
};
pub use cumulants::{
    centering_constants, cumulant_log_volume, s_derivative, variance_asymptote, CenteringConstants, CumulantReport,
    RegimeTag,
};
pub use error::{Error, Result};
pub use geometry::{LogVolumeSample, PointCloud, VolumeConvention};
pub use moments::{
    log_mgf_log_volume, log_moment_parallelotope, log_moment_simplex, LogMoment, ModelKind, ModelSpec, MomentOrder,
    SimplexDims, Target,
};
pub use rng::RngSeed;
pub use sampling::SamplePath;
pub use stats::{EmpiricalSummary, Reference};
