//! Fixtures shared by the benchmarks.

use simplex_limits::sampling::sample_points;
use simplex_limits::{ModelSpec, PointCloud, RngSeed};

/// `count` standard Gaussian points in `R^n`, fixed seed.
pub fn gaussian_cloud(n: usize, count: usize) -> PointCloud {
    sample_points(ModelSpec::gaussian(), n, count, RngSeed::new(0xbe7c, 0)).expect("valid dimensions")
}

/// Arguments at which the special functions are timed: small, moderate,
/// and deep in the asymptotic range.
pub const SPECIAL_ARGS: [f64; 3] = [0.75, 37.5, 5.0e5];
