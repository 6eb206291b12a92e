//! Exact cumulants of the log-volume `L_{n,r} = log(r! V_{n,r})`.
//!
//! The cumulant generating function of `L` is `log M(t)` with `M` the moment
//! formula at half-order `t/2`, a finite sum of log-gamma differences. Its
//! derivatives at zero are therefore finite sums of polygamma values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::{simplex_shift, ModelKind, ModelSpec, SimplexDims};
use crate::special::polygamma_unchecked;

/// Growth class of `r` relative to `n`.
///
/// A regime describes a sequence `r = r(n)`, so it is always supplied
/// explicitly rather than guessed from one `(n, r)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RegimeTag {
    /// `r → ∞` with `r = o(n)`.
    SmallR,
    /// `r ~ α n` with `α ∈ (0, 1)`.
    Proportional { alpha: f64 },
    /// `n − r = o(n)`.
    FullCodimSmall,
    /// `r` fixed.
    FixedR { r: usize },
    /// `n − r = d` fixed.
    FixedCodim { d: usize },
}

impl RegimeTag {
    pub fn validate(&self) -> Result<()> {
        match *self {
            RegimeTag::Proportional { alpha } if !(alpha > 0.0 && alpha < 1.0) => {
                Err(Error::InvalidParameters(format!("proportional regime needs 0 < alpha < 1, got {alpha}")))
            }
            RegimeTag::FixedR { r: 0 } => Err(Error::InvalidParameters("fixed-r regime needs r >= 1".into())),
            _ => Ok(()),
        }
    }

    /// A representative `r(n)`: `⌊√n⌋` for small `r`, `⌊αn⌋`, `n − ⌊√n⌋` for
    /// small codimension, and the fixed values otherwise.
    pub fn r_at(&self, n: usize) -> Result<usize> {
        self.validate()?;
        let root = (n as f64).sqrt().floor() as usize;
        let r = match *self {
            RegimeTag::SmallR => root.max(1),
            RegimeTag::Proportional { alpha } => ((alpha * n as f64).floor() as usize).max(1),
            RegimeTag::FullCodimSmall => n - root.min(n - 1),
            RegimeTag::FixedR { r } => r,
            RegimeTag::FixedCodim { d } => n.saturating_sub(d),
        };
        if r == 0 || r > n {
            return Err(Error::InvalidParameters(format!("regime {self:?} has no valid r at n={n}")));
        }
        Ok(r)
    }

    /// [`SimplexDims`] at `n` using [`RegimeTag::r_at`].
    pub fn dims_at(&self, n: usize) -> Result<SimplexDims> {
        SimplexDims::new(n, self.r_at(n)?)
    }

    fn check_dims(&self, dims: SimplexDims) -> Result<()> {
        self.validate()?;
        match *self {
            RegimeTag::FixedR { r } if r != dims.r() => Err(Error::InvalidParameters(format!(
                "fixed-r regime has r={r} but dims have r={}",
                dims.r()
            ))),
            RegimeTag::FixedCodim { d } if d != dims.codim() => Err(Error::InvalidParameters(format!(
                "fixed-codimension regime has d={d} but dims have n-r={}",
                dims.codim()
            ))),
            _ => Ok(()),
        }
    }
}

/// One cumulant `c^m[L]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cumulant {
    pub order: u32,
    pub value: f64,
}

/// The first `M` cumulants of `L_{n,r}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulantReport {
    pub model: ModelSpec,
    pub n: usize,
    pub r: usize,
    pub cumulants: Vec<Cumulant>,
}

impl CumulantReport {
    pub fn new(model: ModelSpec, dims: SimplexDims, max_order: u32) -> Result<Self> {
        let cumulants = (1..=max_order)
            .map(|m| Ok(Cumulant { order: m, value: cumulant_log_volume(model, dims, m)? }))
            .collect::<Result<_>>()?;
        Ok(Self { model, n: dims.n(), r: dims.r(), cumulants })
    }

    pub fn max_order(&self) -> u32 {
        self.cumulants.len() as u32
    }

    pub fn get(&self, m: u32) -> Option<f64> {
        self.cumulants.iter().find(|c| c.order == m).map(|c| c.value)
    }
}

/// `m`-th derivative at 0 of `S_{n,r}(z) = Σ_j [log Γ(a_j + z/2) − log Γ(a_j)]`:
/// `2^(−m) Σ_j ψ^(m−1)((n − r + j)/2)`.
pub fn s_derivative(dims: SimplexDims, m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("derivative order must be >= 1".into()));
    }
    let base = dims.codim() as f64;
    let sum: f64 = (1..=dims.r()).map(|j| polygamma_unchecked(m - 1, (base + j as f64) / 2.0)).sum();
    finite(sum * 0.5f64.powi(m as i32), m)
}

fn finite(value: f64, m: u32) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("cumulant of order {m} is not representable as f64")))
    }
}

/// `c^m[L_{n,r}]` for the Gaussian, Beta and spherical models.
pub fn cumulant_log_volume(model: ModelSpec, dims: SimplexDims, m: u32) -> Result<f64> {
    model.require_all_moments("cumulants of the log-volume")?;
    if model.kind() == ModelKind::Spherical && dims.n() < 2 {
        return Err(Error::InvalidParameters("spherical model needs n >= 2".into()));
    }
    let s = s_derivative(dims, m)?;
    let r = dims.r() as f64;
    let value = match model.kind() {
        ModelKind::Gaussian if m == 1 => s + 0.5 * (r + 1.0).ln() + 0.5 * r * std::f64::consts::LN_2,
        ModelKind::Gaussian => s,
        _ => {
            let a = simplex_shift(model, dims);
            let half = 0.5f64.powi(m as i32);
            let mi = m as i32;
            let weight = ((r + 1.0).powi(mi) - r.powi(mi)) * half;
            let tail = (r + 1.0) * half * polygamma_unchecked(m - 1, (dims.n() as f64 + model.nu()) / 2.0);
            s + weight * polygamma_unchecked(m - 1, a) - tail
        }
    };
    finite(value, m)
}

/// Leading-order variance of `L_{n,r}` in the given regime.
///
/// Beta and spherical models use `½ log(n/(n−r)) − r²/(2n(r+1))` outside the
/// proportional regime. It is equivalent to `r/(2(r+1)n)` for `r = o(√n)` and
/// to `½ log(n/(n−r+1))` for `n − r = o(n)`, but stays accurate when `r` is of
/// order `√n` and converges much faster in small codimension.
pub fn variance_asymptote(model: ModelSpec, regime: RegimeTag, dims: SimplexDims) -> Result<f64> {
    model.require_all_moments("variance asymptotics")?;
    regime.check_dims(dims)?;
    let n = dims.n() as f64;
    let r = dims.r() as f64;
    let codim = 0.5 * (n / (n - r + 1.0)).ln();
    let gaussian = model.kind() == ModelKind::Gaussian;
    Ok(match regime {
        RegimeTag::SmallR | RegimeTag::FixedR { .. } if gaussian => r / (2.0 * n),
        RegimeTag::Proportional { alpha } if gaussian => 0.5 * (1.0 / (1.0 - alpha)).ln(),
        RegimeTag::Proportional { alpha } => 0.5 * (1.0 / (1.0 - alpha)).ln() - alpha / 2.0,
        RegimeTag::FullCodimSmall | RegimeTag::FixedCodim { .. } if gaussian => codim,
        _ if dims.codim() == 0 => codim,
        _ => 0.5 * (n / (n - r)).ln() - r * r / (2.0 * n * (r + 1.0)),
    })
}

/// `½ (n log n − n + ½ log n + log(2^(3/2) π))`, the Gaussian full-dimensional centering.
pub fn gaussian_centering(n: f64) -> f64 {
    0.5 * (n * n.ln() - n + 0.5 * n.ln() + (2f64.powf(1.5) * std::f64::consts::PI).ln())
}

/// `½ (½ log n − n + 1 − ν + log(2^(3/2) π))`, the Beta full-dimensional centering.
pub fn beta_centering(n: f64, nu: f64) -> f64 {
    0.5 * (0.5 * n.ln() - n + 1.0 - nu + (2f64.powf(1.5) * std::f64::consts::PI).ln())
}

/// Centering and scaling constants attached to a model and regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CenteringConstants {
    /// Gaussian full-dimensional centering `m_n`.
    pub m_n: f64,
    /// Beta full-dimensional centering `m̃_n`.
    pub m_tilde_n: f64,
    /// Berry-Esseen speed.
    pub eps_n: f64,
    /// Mod-φ parameter; `None` where no mod-φ limit is available.
    pub w_n: Option<f64>,
}

pub fn centering_constants(model: ModelSpec, dims: SimplexDims, regime: RegimeTag) -> Result<CenteringConstants> {
    model.require_all_moments("centering constants")?;
    regime.check_dims(dims)?;
    let n = dims.n() as f64;
    let r = dims.r() as f64;
    let gaussian = model.kind() == ModelKind::Gaussian;
    let codim_speed = 1.0 / (n / (n - r + 1.0)).ln().sqrt();
    let eps_n = match regime {
        RegimeTag::SmallR | RegimeTag::FixedR { .. } if gaussian => 1.0 / (r * n).sqrt(),
        RegimeTag::Proportional { .. } if gaussian => 1.0 / (r * n).sqrt(),
        RegimeTag::SmallR | RegimeTag::FixedR { .. } => 1.0 / n.sqrt(),
        RegimeTag::Proportional { .. } => 1.0 / n,
        RegimeTag::FullCodimSmall | RegimeTag::FixedCodim { .. } => codim_speed,
    };
    let full_w = if gaussian { 0.5 * (n / 2.0).ln() } else { 0.5 * (n / 2.0).ln() - 0.5 };
    let w_n = match regime {
        RegimeTag::FixedR { r } if gaussian => Some(r as f64 * n),
        RegimeTag::FixedR { .. } => Some(n),
        RegimeTag::FixedCodim { .. } => Some(full_w),
        RegimeTag::FullCodimSmall if dims.codim() > 0 => Some(0.5 * (n / (n - r)).ln()),
        RegimeTag::FullCodimSmall => Some(full_w),
        RegimeTag::SmallR | RegimeTag::Proportional { .. } => None,
    };
    Ok(CenteringConstants {
        m_n: gaussian_centering(n),
        m_tilde_n: beta_centering(n, model.nu()),
        eps_n,
        w_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::EULER_GAMMA;

    fn dims(n: usize, r: usize) -> SimplexDims {
        SimplexDims::new(n, r).unwrap()
    }

    #[test]
    fn s_derivative_examples() {
        assert!((s_derivative(dims(2, 1), 1).unwrap() + EULER_GAMMA / 2.0).abs() < 1e-14);
        let pg = std::f64::consts::PI.powi(2) / 6.0 - 1.0;
        assert!((s_derivative(dims(4, 1), 2).unwrap() - pg / 4.0).abs() < 1e-14);
    }

    #[test]
    fn gaussian_second_cumulant_example() {
        let c2 = cumulant_log_volume(ModelSpec::gaussian(), dims(4, 1), 2).unwrap();
        assert!((c2 - 0.16123).abs() < 1e-5);
    }

    #[test]
    fn beta_prime_is_unsupported() {
        let bp = ModelSpec::beta_prime(2.0).unwrap();
        assert!(matches!(cumulant_log_volume(bp, dims(4, 1), 2), Err(Error::UnsupportedModel(_))));
    }

    #[test]
    fn asymptote_examples() {
        let half = RegimeTag::Proportional { alpha: 0.5 };
        let g = variance_asymptote(ModelSpec::gaussian(), half, dims(100, 50)).unwrap();
        assert!((g - 0.5 * 2f64.ln()).abs() < 1e-15);
        let b = variance_asymptote(ModelSpec::beta(3.0).unwrap(), half, dims(100, 50)).unwrap();
        assert!((b - (0.5 * 2f64.ln() - 0.25)).abs() < 1e-15);
        let s = variance_asymptote(ModelSpec::gaussian(), RegimeTag::SmallR, dims(10_000, 100)).unwrap();
        assert!((s - 0.005).abs() < 1e-15);
    }

    #[test]
    fn speeds_and_parameters() {
        let g = ModelSpec::gaussian();
        let c = centering_constants(g, dims(400, 20), RegimeTag::SmallR).unwrap();
        assert!((c.eps_n - 1.0 / (20.0f64 * 400.0).sqrt()).abs() < 1e-15);
        assert_eq!(c.w_n, None);
        let b = ModelSpec::beta(1.0).unwrap();
        let c = centering_constants(b, dims(400, 200), RegimeTag::Proportional { alpha: 0.5 }).unwrap();
        assert!((c.eps_n - 1.0 / 400.0).abs() < 1e-15);
        let c = centering_constants(g, dims(400, 400), RegimeTag::FixedCodim { d: 0 }).unwrap();
        assert!((c.w_n.unwrap() - 0.5 * 200f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn regime_dims_must_agree() {
        let g = ModelSpec::gaussian();
        assert!(variance_asymptote(g, RegimeTag::FixedR { r: 3 }, dims(10, 4)).is_err());
        assert!(RegimeTag::Proportional { alpha: 1.0 }.validate().is_err());
        assert_eq!(RegimeTag::SmallR.r_at(10_000).unwrap(), 100);
        assert_eq!(RegimeTag::FullCodimSmall.r_at(100).unwrap(), 90);
    }
}
