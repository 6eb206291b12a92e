//! Point samplers and the independent product-representation samplers.
//!
//! Two routes lead to every volume statistic. The geometric route draws the
//! points and measures them. The representation route draws a short product
//! of independent Gamma, chi-square and Beta variables with the same law;
//! it costs `O(r)` per sample instead of `O(n r²)`.
//!
//! For simplices in the Beta, Beta-prime and spherical models the trailing
//! Gamma-ratio factor of the moment formula is split with Gauss's
//! multiplication formula into a product of Beta and Gamma moments, giving
//! an exact product law for `(r! V)²`:
//!
//! ```text
//! Beta, spherical:  (r!V)² = C · Π_j β(a_j, (ν+r−j)/2) · Π_{i<r} β((A+i)/(r+1), (A+i)/(r(r+1)))
//! Beta-prime:       (r!V)² = C · Π_j G(a_j) / (Π_{i=1..r} β(ν/2, i/(r+1)) · Π_{i<r} G((B+i)/r))
//! ```
//!
//! with `a_j = (n−r+j)/2`, `A = (r(n+ν−2)+n+ν)/2`, `B = (r+1)ν/2` and
//! `C = (r+1)^(r+1) / r^r`. All variates are drawn in log space.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{distance_to_affine_hull, half_log_gram, LogVolumeSample, PointCloud, VolumeConvention};
use crate::moments::{simplex_shift, ModelKind, ModelSpec, SimplexDims, Target};
use crate::rng::{sample_blocks, RngSeed};
use crate::special::ln_gamma;

/// Which of the two equal-in-law routes produces a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplePath {
    /// Draw points and measure them.
    Geometric,
    /// Draw from the product representation or reference law.
    Reference,
}

/// `log G` with `G ~ Gamma(shape, 1)`; `shape = 0` is the point mass at 0.
pub fn ln_gamma_variate<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    if shape == 0.0 {
        return f64::NEG_INFINITY;
    }
    if shape < 1.0 {
        // G(a) = G(a+1) · U^(1/a), kept in logs so tiny shapes do not underflow.
        let u: f64 = 1.0 - rng.random::<f64>();
        return ln_gamma_variate(shape + 1.0, rng) + u.ln() / shape;
    }
    let g = Gamma::new(shape, 1.0).expect("gamma shape is positive and finite");
    g.sample(rng).ln()
}

/// `log β` with `β ~ Beta(a, b)`; `b = 0` is the point mass at 1, `a = 0` at 0.
pub fn ln_beta_variate<R: Rng + ?Sized>(a: f64, b: f64, rng: &mut R) -> f64 {
    if b == 0.0 {
        return 0.0;
    }
    if a == 0.0 {
        return f64::NEG_INFINITY;
    }
    let la = ln_gamma_variate(a, rng);
    let lb = ln_gamma_variate(b, rng);
    let hi = la.max(lb);
    la - (hi + ((la - hi).exp() + (lb - hi).exp()).ln())
}

/// `log β′` with `β′ ~ BetaPrime(a, b)`, the law of `G_a / G_b`.
pub fn ln_beta_prime_variate<R: Rng + ?Sized>(a: f64, b: f64, rng: &mut R) -> f64 {
    ln_gamma_variate(a, rng) - ln_gamma_variate(b, rng)
}

/// `log χ²_df`; `df = 0` is the point mass at 0.
pub fn ln_chi_squared_variate<R: Rng + ?Sized>(df: f64, rng: &mut R) -> f64 {
    std::f64::consts::LN_2 + ln_gamma_variate(df / 2.0, rng)
}

/// Log of the squared radius `|X|²` of one point.
fn ln_radius_squared<R: Rng + ?Sized>(model: ModelSpec, n: usize, rng: &mut R) -> f64 {
    let half_n = n as f64 / 2.0;
    match model.kind() {
        ModelKind::Beta => ln_beta_variate(half_n, model.nu() / 2.0, rng),
        ModelKind::BetaPrime => ln_beta_prime_variate(half_n, model.nu() / 2.0, rng),
        ModelKind::Gaussian | ModelKind::Spherical => 0.0,
    }
}

/// Fills `col` with one point of the model.
fn fill_point<R: Rng + ?Sized>(model: ModelSpec, col: &mut [f64], rng: &mut R) {
    for x in col.iter_mut() {
        *x = rng.sample(StandardNormal);
    }
    if model.kind() == ModelKind::Gaussian {
        return;
    }
    let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
    let radius = (0.5 * ln_radius_squared(model, col.len(), rng)).exp();
    let scale = radius / norm;
    for x in col.iter_mut() {
        *x *= scale;
    }
}

fn sample_matrix<R: Rng + ?Sized>(model: ModelSpec, n: usize, count: usize, rng: &mut R) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, count);
    for j in 0..count {
        fill_point(model, m.column_mut(j).as_mut_slice(), rng);
    }
    m
}

/// `count` i.i.d. points of the model in `R^n`, drawn from a caller-held generator.
///
/// Beta and Beta-prime points are `R U` with `U` uniform on the sphere and
/// `R² ~ Beta(n/2, ν/2)` resp. `BetaPrime(n/2, ν/2)`; spherical points are
/// normalized Gaussian vectors.
pub fn sample_points_with<R: Rng + ?Sized>(model: ModelSpec, n: usize, count: usize, rng: &mut R) -> Result<PointCloud> {
    if n == 0 || count == 0 {
        return Err(Error::InvalidParameters(format!("need n >= 1 and count >= 1, got n={n}, count={count}")));
    }
    Ok(PointCloud::from_columns(sample_matrix(model, n, count, rng)))
}

/// `count` i.i.d. points of the model in `R^n`.
pub fn sample_points(model: ModelSpec, n: usize, count: usize, seed: RngSeed) -> Result<PointCloud> {
    sample_points_with(model, n, count, &mut seed.rng())
}

/// One geometric sample: `log(r! V)` for a simplex, `log W` for a parallelotope.
pub fn geometric_log_volume<R: Rng + ?Sized>(
    model: ModelSpec,
    dims: SimplexDims,
    target: Target,
    rng: &mut R,
) -> Result<LogVolumeSample> {
    let (n, r) = (dims.n(), dims.r());
    match target {
        Target::Parallelotope => {
            let value = half_log_gram(sample_matrix(model, n, r, rng))?;
            Ok(LogVolumeSample { value, convention: VolumeConvention::RawVolume })
        }
        Target::Simplex => {
            let pts = sample_matrix(model, n, r + 1, rng);
            let edges = DMatrix::from_fn(n, r, |i, j| pts[(i, j + 1)] - pts[(i, 0)]);
            let value = half_log_gram(edges)?;
            Ok(LogVolumeSample { value, convention: VolumeConvention::FactorialScaled })
        }
    }
}

/// `log W²` from the parallelotope product law.
fn product_log_w2<R: Rng + ?Sized>(model: ModelSpec, dims: SimplexDims, rng: &mut R) -> f64 {
    let (n, r) = (dims.n(), dims.r());
    let nu = model.nu();
    (1..=r)
        .map(|j| {
            let a = (n - r + j) as f64 / 2.0;
            let rest = (r - j) as f64 / 2.0;
            match model.kind() {
                ModelKind::Gaussian => ln_chi_squared_variate((n - r + j) as f64, rng),
                ModelKind::Beta | ModelKind::Spherical => ln_beta_variate(a, nu / 2.0 + rest, rng),
                ModelKind::BetaPrime => ln_beta_prime_variate(a, nu / 2.0, rng),
            }
        })
        .sum()
}

/// `log (r! V)²` from the simplex product law.
fn product_log_simplex2<R: Rng + ?Sized>(model: ModelSpec, dims: SimplexDims, rng: &mut R) -> f64 {
    let (n, r) = (dims.n(), dims.r());
    let rf = r as f64;
    let c = (rf + 1.0) * (rf + 1.0).ln() - rf * rf.ln();
    match model.kind() {
        ModelKind::Gaussian => (rf + 1.0).ln() + product_log_w2(model, dims, rng),
        ModelKind::Beta | ModelKind::Spherical => {
            let a = simplex_shift(model, dims);
            let mut acc = c + product_log_w2(model, dims, rng);
            for i in 0..r {
                let s = a + i as f64;
                acc += ln_beta_variate(s / (rf + 1.0), s / (rf * (rf + 1.0)), rng);
            }
            acc
        }
        ModelKind::BetaPrime => {
            let half = model.nu() / 2.0;
            let b = (rf + 1.0) * half;
            let mut acc = c;
            for j in 1..=r {
                acc += ln_gamma_variate((n - r + j) as f64 / 2.0, rng);
            }
            for i in 1..=r {
                acc -= ln_beta_variate(half, i as f64 / (rf + 1.0), rng);
            }
            for i in 0..r {
                acc -= ln_gamma_variate((b + i as f64) / rf, rng);
            }
            acc
        }
    }
}

/// One sample from the product representation, equal in law to
/// [`geometric_log_volume`].
pub fn product_log_volume<R: Rng + ?Sized>(model: ModelSpec, dims: SimplexDims, target: Target, rng: &mut R) -> LogVolumeSample {
    match target {
        Target::Parallelotope => LogVolumeSample {
            value: 0.5 * product_log_w2(model, dims, rng),
            convention: VolumeConvention::RawVolume,
        },
        Target::Simplex => LogVolumeSample {
            value: 0.5 * product_log_simplex2(model, dims, rng),
            convention: VolumeConvention::FactorialScaled,
        },
    }
}

/// One product-representation sample drawn from the start of `seed`'s stream.
pub fn sample_product_representation(
    model: ModelSpec,
    dims: SimplexDims,
    target: Target,
    seed: RngSeed,
) -> Result<LogVolumeSample> {
    check_model_dims(model, dims)?;
    Ok(product_log_volume(model, dims, target, &mut seed.rng()))
}

fn check_model_dims(model: ModelSpec, dims: SimplexDims) -> Result<()> {
    if model.kind() == ModelKind::Spherical && dims.n() < 2 {
        return Err(Error::InvalidParameters("spherical model needs n >= 2".into()));
    }
    Ok(())
}

/// `count` log-volumes (`log(r! V)` or `log W`) along the chosen path.
pub fn log_volume_samples(
    model: ModelSpec,
    dims: SimplexDims,
    target: Target,
    path: SamplePath,
    count: usize,
    seed: RngSeed,
) -> Result<Vec<f64>> {
    check_model_dims(model, dims)?;
    match path {
        SamplePath::Geometric => {
            sample_blocks(seed, count, |rng| Ok(geometric_log_volume(model, dims, target, rng)?.value))
        }
        SamplePath::Reference => {
            sample_blocks(seed, count, |rng| Ok(product_log_volume(model, dims, target, rng).value))
        }
    }
}

/// Squared distance from the reference law of the model.
fn reference_distance2<R: Rng + ?Sized>(model: ModelSpec, dims: SimplexDims, rng: &mut R) -> f64 {
    let (n, r) = (dims.n() as f64, dims.r() as f64);
    let a = (n - r) / 2.0;
    let nu = model.nu();
    let ln_d2 = match model.kind() {
        ModelKind::Gaussian => ln_chi_squared_variate(n - r, rng) - (r + 1.0).ln(),
        ModelKind::Beta => ln_beta_variate(a, (nu * (r + 1.0) + r * (n - 1.0)) / 2.0, rng),
        ModelKind::BetaPrime => ln_beta_prime_variate(a, nu * (r + 1.0) / 2.0, rng),
        ModelKind::Spherical => ln_beta_variate(a, r * (n - 1.0) / 2.0, rng),
    };
    ln_d2.exp()
}

fn distance_with<R: Rng + ?Sized>(model: ModelSpec, dims: SimplexDims, path: SamplePath, rng: &mut R) -> Result<f64> {
    match path {
        SamplePath::Geometric => {
            let cloud = PointCloud::from_columns(sample_matrix(model, dims.n(), dims.r() + 1, rng));
            distance_to_affine_hull(&cloud)
        }
        SamplePath::Reference => Ok(reference_distance2(model, dims, rng).sqrt()),
    }
}

/// Distance from the origin to `aff(X_1, …, X_{r+1})`, one sample.
pub fn sample_distance_to_affine(model: ModelSpec, dims: SimplexDims, seed: RngSeed, path: SamplePath) -> Result<f64> {
    check_model_dims(model, dims)?;
    distance_with(model, dims, path, &mut seed.rng())
}

/// `count` distance samples along the chosen path.
pub fn distance_samples(
    model: ModelSpec,
    dims: SimplexDims,
    path: SamplePath,
    count: usize,
    seed: RngSeed,
) -> Result<Vec<f64>> {
    check_model_dims(model, dims)?;
    sample_blocks(seed, count, |rng| distance_with(model, dims, path, rng))
}

/// `log Γ(r + 1)`, exposed for callers converting between conventions.
pub fn ln_factorial(r: usize) -> f64 {
    ln_gamma(r as f64 + 1.0)
}
