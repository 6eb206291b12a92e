//! Limit theorems for the log-volume: mod-φ convergence, scaled cumulant
//! generating limits with their rate functions, and Monte Carlo harnesses
//! for the Gaussian and log-normal limits.
//!
//! Everything except the harness is evaluated exactly from log-gamma and
//! Barnes G formulas, so truncation error is never mixed with sampling noise.

mod harness;
mod ldp;
mod mod_phi;

pub use harness::{verify_gaussian_limit, verify_volume_limit, MIN_HARNESS_SAMPLES};
pub use ldp::{
    legendre_transform, rate_function, rate_function_numeric, scaled_cgf_domain, scaled_cgf_limit, scaled_log_mgf,
    LegendrePoint, RateFunctionTable, RateSource,
};
pub use mod_phi::{convergence_table, mod_phi_limit, mod_phi_ratio, ConvergenceRow, ModPhiCase};
