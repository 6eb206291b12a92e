//! Monte Carlo checks of the central limit theorem and the volume limits.
//!
//! Samples come from the product representation, so a run costs `O(r)`
//! per sample. Sorting before the KS statistic makes the result independent
//! of how blocks were scheduled.

use crate::cumulants::{cumulant_log_volume, variance_asymptote, RegimeTag};
use crate::error::{Error, Result};
use crate::moments::{ModelSpec, SimplexDims, Target};
use crate::rng::RngSeed;
use crate::sampling::{log_volume_samples, SamplePath};
use crate::stats::{std_normal_cdf, EmpiricalSummary, Reference};

/// Fewest samples accepted by the harnesses.
pub const MIN_HARNESS_SAMPLES: usize = 1000;

fn log_volumes(model: ModelSpec, dims: SimplexDims, sample_count: usize, seed: RngSeed) -> Result<Vec<f64>> {
    model.require_all_moments("the limit harness")?;
    if sample_count < MIN_HARNESS_SAMPLES {
        return Err(Error::InvalidParameters(format!(
            "harness needs at least {MIN_HARNESS_SAMPLES} samples, got {sample_count}"
        )));
    }
    log_volume_samples(model, dims, Target::Simplex, SamplePath::Reference, sample_count, seed)
}

/// KS distance of `(L − c¹)/√c²` from the standard normal, with
/// `L = log(r! V)` and the exact first two cumulants.
pub fn verify_gaussian_limit(
    model: ModelSpec,
    dims: SimplexDims,
    sample_count: usize,
    seed: RngSeed,
) -> Result<EmpiricalSummary> {
    let samples = log_volumes(model, dims, sample_count, seed)?;
    let c1 = cumulant_log_volume(model, dims, 1)?;
    let sd = cumulant_log_volume(model, dims, 2)?.sqrt();
    let z = samples.into_iter().map(|l| (l - c1) / sd).collect();
    Ok(EmpiricalSummary::against(z, Reference::StdNormal, std_normal_cdf))
}

/// KS distance of the normalized volume `r! V` from its limit law.
///
/// Small and fixed `r`: `(r!V − e^{c¹}) / (e^{c¹} √c²)` against the standard
/// normal. Proportional `r`: `r!V / e^{c¹}` against `e^{σZ}` with `σ²` from
/// [`variance_asymptote`]. The codimension regimes have no non-degenerate
/// volume limit and are rejected.
pub fn verify_volume_limit(
    model: ModelSpec,
    regime: RegimeTag,
    dims: SimplexDims,
    sample_count: usize,
    seed: RngSeed,
) -> Result<EmpiricalSummary> {
    if matches!(regime, RegimeTag::FullCodimSmall | RegimeTag::FixedCodim { .. }) {
        return Err(Error::Unsupported("no distributional limit for the volume in the codimension regimes".into()));
    }
    let sigma2 = variance_asymptote(model, regime, dims)?;
    let samples = log_volumes(model, dims, sample_count, seed)?;
    let c1 = cumulant_log_volume(model, dims, 1)?;
    match regime {
        RegimeTag::Proportional { .. } => {
            let reference = Reference::LogNormal { sigma: sigma2.sqrt() };
            let cdf = reference.cdf().expect("log-normal has a cdf");
            let v = samples.into_iter().map(|l| (l - c1).exp()).collect();
            Ok(EmpiricalSummary::against(v, reference, cdf))
        }
        _ => {
            let sd = cumulant_log_volume(model, dims, 2)?.sqrt();
            let v = samples.into_iter().map(|l| (l - c1).exp_m1() / sd).collect();
            Ok(EmpiricalSummary::against(v, Reference::StdNormal, std_normal_cdf))
        }
    }
}
