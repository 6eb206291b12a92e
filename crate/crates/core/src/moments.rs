//! Point models and exact moments of simplex and parallelotope volumes.
//!
//! All moments are returned as natural logarithms and assembled from
//! [`log_gamma_ratio`](crate::special::log_gamma_ratio) terms, so they stay
//! finite and accurate for ambient dimensions in the millions.
//!
//! Two parametrizations coexist: moments at half-order `k` give
//! `E[X^(2k)]`, while the moment generating function of the log-volume is
//! indexed by `t = 2k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::special::ln_gamma_ratio;

/// The four isotropic point distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// Standard Gaussian vectors.
    Gaussian,
    /// Density proportional to `(1 − |x|²)^((ν−2)/2)` in the unit ball.
    Beta,
    /// Density proportional to `(1 + |x|²)^(−(n+ν)/2)`.
    BetaPrime,
    /// Uniform on the unit sphere.
    Spherical,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Gaussian => "gaussian",
            ModelKind::Beta => "beta",
            ModelKind::BetaPrime => "beta-prime",
            ModelKind::Spherical => "spherical",
        })
    }
}

/// A point model together with its shape parameter `ν`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    kind: ModelKind,
    nu: f64,
}

impl ModelSpec {
    /// Validates `ν`: positive for Beta and Beta-prime, ignored otherwise
    /// (stored as 0 so that the spherical model is the `ν = 0` Beta model).
    pub fn new(kind: ModelKind, nu: f64) -> Result<Self> {
        match kind {
            ModelKind::Beta | ModelKind::BetaPrime if !(nu.is_finite() && nu > 0.0) => Err(
                Error::InvalidParameters(format!("{kind} model requires nu > 0, got {nu}")),
            ),
            ModelKind::Beta | ModelKind::BetaPrime => Ok(Self { kind, nu }),
            ModelKind::Gaussian | ModelKind::Spherical => Ok(Self { kind, nu: 0.0 }),
        }
    }

    pub fn gaussian() -> Self {
        Self { kind: ModelKind::Gaussian, nu: 0.0 }
    }

    pub fn spherical() -> Self {
        Self { kind: ModelKind::Spherical, nu: 0.0 }
    }

    pub fn beta(nu: f64) -> Result<Self> {
        Self::new(ModelKind::Beta, nu)
    }

    pub fn beta_prime(nu: f64) -> Result<Self> {
        Self::new(ModelKind::BetaPrime, nu)
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// True for the models whose log-volume has a full cumulant theory
    /// (every model except Beta-prime).
    pub fn has_all_moments(&self) -> bool {
        self.kind != ModelKind::BetaPrime
    }

    /// Rejects Beta-prime with an unsupported-model error.
    pub(crate) fn require_all_moments(&self, what: &str) -> Result<()> {
        if self.has_all_moments() {
            Ok(())
        } else {
            Err(Error::UnsupportedModel(format!(
                "{what} is only available for the gaussian, beta and spherical models"
            )))
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModelKind::Beta | ModelKind::BetaPrime => write!(f, "{}(nu={})", self.kind, self.nu),
            _ => write!(f, "{}", self.kind),
        }
    }
}

/// Ambient dimension `n` and simplex dimension `r`, `1 ≤ r ≤ n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplexDims {
    n: usize,
    r: usize,
}

impl SimplexDims {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r == 0 || r > n {
            return Err(Error::InvalidParameters(format!("need 1 <= r <= n, got n={n}, r={r}")));
        }
        Ok(Self { n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Codimension `n − r`.
    pub fn codim(&self) -> usize {
        self.n - self.r
    }
}

/// Half-order `k ≥ 0` of a moment `E[X^(2k)]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct MomentOrder(f64);

impl MomentOrder {
    pub fn new(k: f64) -> Result<Self> {
        if k.is_finite() && k >= 0.0 {
            Ok(Self(k))
        } else {
            Err(domain!("moment order must be finite and >= 0, got {k}"))
        }
    }

    pub fn k(&self) -> f64 {
        self.0
    }
}

/// Which body the volume refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// Spanned by `X_1, …, X_r` from the origin.
    Parallelotope,
    /// Convex hull of `X_1, …, X_{r+1}`.
    Simplex,
}

/// Natural log of `E[W^(2k)]` (parallelotope) or `E[(r! V)^(2k)]` (simplex).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogMoment {
    pub value: f64,
    pub order: MomentOrder,
    pub target: Target,
}

impl LogMoment {
    /// The moment itself; may overflow to infinity.
    pub fn linear(&self) -> f64 {
        self.value.exp()
    }
}

/// `(n − r + j)/2` for `j = 1..=r`.
fn half_shapes(dims: SimplexDims) -> impl Iterator<Item = f64> {
    let base = dims.codim() as f64;
    (1..=dims.r).map(move |j| (base + j as f64) / 2.0)
}

/// `Σ_j log Γ(a_j + k)/Γ(a_j)`, the product shared by every model.
fn common_product(dims: SimplexDims, k: f64) -> f64 {
    half_shapes(dims).map(|a| ln_gamma_ratio(a, k)).sum()
}

/// `(r(n+ν−2) + n + ν)/2`, the shift in the trailing simplex factor.
pub(crate) fn simplex_shift(model: ModelSpec, dims: SimplexDims) -> f64 {
    let s = dims.n as f64 + model.nu;
    (dims.r as f64 * (s - 2.0) + s) / 2.0
}

fn check_spherical_dims(model: ModelSpec, dims: SimplexDims) -> Result<()> {
    if model.kind == ModelKind::Spherical && dims.n < 2 {
        return Err(Error::InvalidParameters(
            "spherical model needs n >= 2 (the 0-sphere gives coincident points with positive probability)".into(),
        ));
    }
    Ok(())
}

/// `log E[W_{n,r}^(2k)]` for the parallelotope spanned by `X_1, …, X_r`.
///
/// Beta-prime moments exist for `k ≤ ν/2`; at `k = ν/2` the moment is
/// infinite and `value` is `+∞`.
pub fn log_moment_parallelotope(model: ModelSpec, dims: SimplexDims, order: MomentOrder) -> Result<LogMoment> {
    let k = order.k();
    let out = |value| LogMoment { value, order, target: Target::Parallelotope };
    if k == 0.0 {
        return Ok(out(0.0));
    }
    let r = dims.r as f64;
    let prod = common_product(dims, k);
    let value = match model.kind {
        ModelKind::Gaussian => prod + r * k * std::f64::consts::LN_2,
        ModelKind::Beta | ModelKind::Spherical => {
            prod - r * ln_gamma_ratio((dims.n as f64 + model.nu) / 2.0, k)
        }
        ModelKind::BetaPrime => {
            let half = model.nu / 2.0;
            if k > half {
                return Err(Error::MomentDivergence(format!(
                    "BetaPrime parallelotope requires k <= nu/2 = {half}, got k={k}"
                )));
            }
            if k == half {
                f64::INFINITY
            } else {
                prod + r * ln_gamma_ratio(half, -k)
            }
        }
    };
    Ok(out(value))
}

/// `log E[(r! V_{n,r})^(2k)]` for the simplex with vertices `X_1, …, X_{r+1}`.
pub fn log_moment_simplex(model: ModelSpec, dims: SimplexDims, order: MomentOrder) -> Result<LogMoment> {
    check_spherical_dims(model, dims)?;
    let k = order.k();
    if model.kind == ModelKind::BetaPrime && k >= model.nu / 2.0 {
        return Err(Error::MomentDivergence(format!(
            "BetaPrime requires k < nu/2 = {}, got k={k}",
            model.nu / 2.0
        )));
    }
    let value = if k == 0.0 { 0.0 } else { simplex_log_mgf_unchecked(model, dims, 2.0 * k) };
    Ok(LogMoment { value, order, target: Target::Simplex })
}

/// `log E[(r! V)^t]` without domain checks; valid wherever every Γ argument is positive.
pub(crate) fn simplex_log_mgf_unchecked(model: ModelSpec, dims: SimplexDims, t: f64) -> f64 {
    let k = t / 2.0;
    let r = dims.r as f64;
    let prod = common_product(dims, k);
    match model.kind {
        ModelKind::Gaussian => prod + r * k * std::f64::consts::LN_2 + k * (r + 1.0).ln(),
        ModelKind::Beta | ModelKind::Spherical => {
            let a = simplex_shift(model, dims);
            prod - (r + 1.0) * ln_gamma_ratio((dims.n as f64 + model.nu) / 2.0, k)
                + ln_gamma_ratio(a + r * k, k)
        }
        ModelKind::BetaPrime => {
            let half = model.nu / 2.0;
            let b = (r + 1.0) * half;
            prod + (r + 1.0) * ln_gamma_ratio(half, -k) + ln_gamma_ratio(b - (r + 1.0) * k, k)
        }
    }
}

/// Open lower end of the `t`-interval on which `log E[(r! V)^t]` is finite.
pub fn log_mgf_lower_bound(model: ModelSpec, dims: SimplexDims) -> Result<f64> {
    model.require_all_moments("the log-volume mgf")?;
    check_spherical_dims(model, dims)?;
    let n = dims.n as f64;
    let r = dims.r as f64;
    // Γ((n−r+1)/2 + t/2) is the binding constraint in the common product.
    let mut lo = -(n - r + 1.0);
    if model.kind != ModelKind::Gaussian {
        let a = simplex_shift(model, dims);
        lo = lo.max(-(n + model.nu)).max(-2.0 * a / r).max(-2.0 * a / (r + 1.0));
    }
    Ok(lo)
}

/// `log M_{n,r}(t) = log E[(r! V_{n,r})^t]`, the mgf of the log-volume `L_{n,r}`.
///
/// Defined on the maximal interval `t > t_min` where every Γ argument is
/// positive (see [`log_mgf_lower_bound`]); Beta-prime is not covered.
pub fn log_mgf_log_volume(model: ModelSpec, dims: SimplexDims, t: f64) -> Result<f64> {
    let lo = log_mgf_lower_bound(model, dims)?;
    if !(t.is_finite() && t > lo) {
        return Err(domain!("log-volume mgf needs t > {lo}, got {t}"));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(simplex_log_mgf_unchecked(model, dims, t))
}
