//! Scaled cumulant generating limits and large deviation rate functions.
//!
//! For each regime the log-volume is centered and scaled so that
//! `(1/s_n) log E e^{t s_n X_n}` has a finite limit `Λ(t)`; the rate function
//! is its Legendre-Fenchel transform `I(x) = sup_t (t x − Λ(t))`.
//!
//! In the proportional regime the sum `Σ_{j ≤ αn} log Γ((1+t−α)n+j)/2 − …`
//! is a Riemann sum, not a sum of `αn` identical terms, which gives
//!
//! ```text
//! Gaussian:  Λ(t) = (F(1+t) − F(1−α+t) − F(1) + F(1−α) − αt)/(2α) − (t/2) log(1−α)
//! Beta:      Λ(t) = (F(1+t) − F(1−α+t) − F(1) + F(1−α) − αt)/(2α) − ((1+t)/2) log(1+t) + t/2
//! ```
//!
//! with `F(x) = x² log(x)/2 − x²/4`, finite down to `t = α − 1`.

use serde::{Deserialize, Serialize};

use super::mod_phi::{beta_fixed_r_eta, xlogx};
use crate::cumulants::{beta_centering, gaussian_centering, RegimeTag};
use crate::error::{domain, Error, Result};
use crate::moments::{log_mgf_log_volume, log_mgf_lower_bound, ModelKind, ModelSpec};

/// Whether a rate function came from a closed form or a numeric transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateSource {
    ClosedForm,
    NumericLegendre,
}

/// `I(x)` on a grid. Points where the rate is infinite hold `+∞`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateFunctionTable {
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    pub source: RateSource,
    pub regime: RegimeTag,
    pub model: ModelSpec,
}

impl RateFunctionTable {
    /// Smallest value on the grid.
    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Discrete convexity on every run of finite values, up to `tol`.
    pub fn is_convex(&self, tol: f64) -> bool {
        self.xs.windows(3).zip(self.values.windows(3)).all(|(x, v)| {
            if v.iter().any(|v| !v.is_finite()) {
                return true;
            }
            let s1 = (v[1] - v[0]) / (x[1] - x[0]);
            let s2 = (v[2] - v[1]) / (x[2] - x[1]);
            s2 - s1 >= -tol
        })
    }
}

fn coverage(model: ModelSpec, regime: RegimeTag) -> Result<()> {
    model.require_all_moments("large deviation limits")?;
    regime.validate()?;
    if model.kind() != ModelKind::Gaussian && regime == RegimeTag::SmallR {
        return Err(Error::Unsupported(
            "Beta and spherical large deviations are available for fixed r, proportional r and small codimension".into(),
        ));
    }
    Ok(())
}

/// Lower end of the interval on which [`scaled_cgf_limit`] is finite;
/// `−∞` for the codimension regimes. The limit is finite at the end point.
pub fn scaled_cgf_domain(model: ModelSpec, regime: RegimeTag) -> Result<f64> {
    coverage(model, regime)?;
    Ok(match regime {
        RegimeTag::SmallR | RegimeTag::FixedR { .. } => -1.0,
        RegimeTag::Proportional { alpha } => alpha - 1.0,
        RegimeTag::FullCodimSmall | RegimeTag::FixedCodim { .. } => f64::NEG_INFINITY,
    })
}

/// `F(x) = x² log(x)/2 − x²/4`, an antiderivative of `x log x`.
fn riemann_primitive(x: f64) -> f64 {
    0.5 * x * xlogx(x) - 0.25 * x * x
}

fn proportional_sum(alpha: f64, t: f64) -> f64 {
    let f = riemann_primitive;
    (f(1.0 + t) - f(1.0 - alpha + t) - f(1.0) + f(1.0 - alpha) - alpha * t) / (2.0 * alpha)
}

/// `Λ(t)`, the limit of [`scaled_log_mgf`]; `+∞` below [`scaled_cgf_domain`].
pub fn scaled_cgf_limit(model: ModelSpec, regime: RegimeTag, t: f64) -> Result<f64> {
    let lo = scaled_cgf_domain(model, regime)?;
    if t.is_nan() {
        return Err(domain!("scaled cgf needs a real t"));
    }
    if t < lo {
        return Ok(f64::INFINITY);
    }
    let gaussian = model.kind() == ModelKind::Gaussian;
    Ok(match regime {
        RegimeTag::SmallR | RegimeTag::FixedR { .. } if gaussian => 0.5 * (xlogx(t + 1.0) - t),
        RegimeTag::FixedR { r } => beta_fixed_r_eta(r as f64, t),
        RegimeTag::Proportional { alpha } if gaussian => proportional_sum(alpha, t) - 0.5 * t * (1.0 - alpha).ln(),
        RegimeTag::Proportional { alpha } => proportional_sum(alpha, t) - 0.5 * xlogx(1.0 + t) + 0.5 * t,
        RegimeTag::FullCodimSmall | RegimeTag::FixedCodim { .. } => 0.5 * t * t,
        RegimeTag::SmallR => unreachable!("rejected by coverage"),
    })
}

/// Exact `(1/s_n) log E e^{t s_n X_n}` at dimension `n`, where `X_n` is the
/// regime's centered and scaled log-volume and `r = regime.r_at(n)`.
///
/// Centering and speed `s_n` by regime:
///
/// ```text
/// small / fixed r, Gaussian   X = (L − (r/2) log n − ½ log(r+1))/r        s = r n
/// fixed r, Beta               X = L                                       s = n
/// proportional, Gaussian      X = (L − (αn/2)(log n + log(1−α)))/(αn)     s = α n²
/// proportional, Beta          X = L/(αn)                                  s = α n²
/// fixed codimension d         X = (L − m_n)/s  or  (L − m̃_n − (d/2) log n)/s
/// small codimension           X = (L − centering)/s                       s = ½ log(n/(n−r))
/// ```
///
/// Returns `+∞` where the mgf is infinite.
pub fn scaled_log_mgf(model: ModelSpec, regime: RegimeTag, n: usize, t: f64) -> Result<f64> {
    coverage(model, regime)?;
    if !t.is_finite() {
        return Err(domain!("scaled cgf needs a finite t, got {t}"));
    }
    let dims = regime.dims_at(n)?;
    let nf = n as f64;
    let r = dims.r() as f64;
    let gaussian = model.kind() == ModelKind::Gaussian;
    // (speed, multiplier of t inside the mgf, centering of L)
    let (speed, tilt, center) = match regime {
        RegimeTag::SmallR | RegimeTag::FixedR { .. } if gaussian => {
            (r * nf, nf, 0.5 * r * nf.ln() + 0.5 * (r + 1.0).ln())
        }
        RegimeTag::FixedR { .. } => (nf, nf, 0.0),
        RegimeTag::Proportional { alpha } => {
            let center = if gaussian { 0.5 * alpha * nf * (nf.ln() + (1.0 - alpha).ln()) } else { 0.0 };
            (alpha * nf * nf, nf, center)
        }
        RegimeTag::FixedCodim { .. } if gaussian => (0.5 * (nf / 2.0).ln(), 1.0, gaussian_centering(nf)),
        RegimeTag::FixedCodim { d } => (
            0.5 * ((nf / 2.0).ln() - 1.0),
            1.0,
            beta_centering(nf, model.nu()) + 0.5 * d as f64 * nf.ln(),
        ),
        RegimeTag::FullCodimSmall => {
            let c = nf - r;
            let base = gaussian_centering(nf) - gaussian_centering(c);
            let center = if gaussian {
                base + 0.5 * ((r + 1.0) * c / nf).ln()
            } else {
                base - (r + 1.0) / (4.0 * nf) * (t - 2.0 + 2.0 * model.nu())
                    + 0.5 * (c.ln() + (1.0 + r).ln() - (1.0 + r) * nf.ln())
            };
            (0.5 * (nf / c).ln(), 1.0, center)
        }
        RegimeTag::SmallR => unreachable!("rejected by coverage"),
    };
    let s = t * tilt;
    if s <= log_mgf_lower_bound(model, dims)? {
        return Ok(f64::INFINITY);
    }
    Ok((log_mgf_log_volume(model, dims, s)? - s * center) / speed)
}

/// Value and maximizer of `sup_t (t x − f(t))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LegendrePoint {
    pub value: f64,
    pub maximizer: f64,
}

const GOLDEN_TOL: f64 = 1e-10;
const EXPANSION_LIMIT: f64 = 1e12;

/// Numeric Legendre-Fenchel transform of a convex `f` with `f(0)` finite.
///
/// `f` must be finite on `[lo, ∞)` (or `(lo, ∞)` with `f → ∞` at `lo`) and
/// may return `+∞` below `lo`. The maximizer is bracketed on a geometric grid
/// (approaching `lo` geometrically from the right), then refined by
/// golden-section search to `1e-10`. An unbounded supremum gives `+∞`.
pub fn legendre_transform(f: impl Fn(f64) -> f64, lo: f64, x: f64) -> LegendrePoint {
    let g = |t: f64| {
        let v = f(t);
        if v.is_finite() {
            t * x - v
        } else {
            f64::NEG_INFINITY
        }
    };
    let t0 = 0.0;
    let g0 = g(t0);
    let left = |k: i32| if lo.is_finite() { lo + (t0 - lo) * 0.5f64.powi(k) } else { t0 - 2f64.powi(k - 1) };
    let (a, c) = if g(t0 + 1.0) > g0 {
        let (mut prev, mut cur, mut step) = (t0, t0 + 1.0, 1.0);
        let mut gc = g(cur);
        loop {
            step *= 2.0;
            let next = cur + step;
            if next > EXPANSION_LIMIT {
                return LegendrePoint { value: f64::INFINITY, maximizer: f64::INFINITY };
            }
            let gn = g(next);
            if gn <= gc {
                break (prev, next);
            }
            (prev, cur, gc) = (cur, next, gn);
        }
    } else if g(left(1)) > g0 {
        let (mut prev, mut cur) = (t0, left(1));
        let mut gc = g(cur);
        let mut k = 1;
        loop {
            k += 1;
            let next = left(k);
            if lo.is_finite() && (next - lo).abs() <= GOLDEN_TOL * 1e-2 {
                return LegendrePoint { value: g(lo), maximizer: lo };
            }
            if next < -EXPANSION_LIMIT {
                return LegendrePoint { value: f64::INFINITY, maximizer: f64::NEG_INFINITY };
            }
            let gn = g(next);
            if gn <= gc {
                break (next, prev);
            }
            (prev, cur, gc) = (cur, next, gn);
        }
    } else {
        (left(1), t0 + 1.0)
    };
    let (t, value) = golden_max(&g, a, c);
    // The sup may sit at a finite boundary if g keeps rising towards it.
    if lo.is_finite() && a <= lo + GOLDEN_TOL {
        let gl = g(lo);
        if gl > value {
            return LegendrePoint { value: gl, maximizer: lo };
        }
    }
    LegendrePoint { value, maximizer: t }
}

fn golden_max(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    while (b - a).abs() > GOLDEN_TOL * (1.0f64).max(a.abs().min(b.abs())) {
        if gc >= gd {
            b = d;
            (d, gd) = (c, gc);
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            (c, gc) = (d, gd);
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    let t = 0.5 * (a + b);
    (t, g(t))
}

/// Rate function by numeric Legendre transform of [`scaled_cgf_limit`],
/// regardless of whether a closed form exists.
pub fn rate_function_numeric(model: ModelSpec, regime: RegimeTag, xs: &[f64]) -> Result<RateFunctionTable> {
    let lo = scaled_cgf_domain(model, regime)?;
    let f = |t: f64| scaled_cgf_limit(model, regime, t).unwrap_or(f64::INFINITY);
    let values = xs.iter().map(|&x| legendre_transform(f, lo, x).value).collect();
    Ok(RateFunctionTable { xs: xs.to_vec(), values, source: RateSource::NumericLegendre, regime, model })
}

/// Rate function `I(x)` on `xs`: closed form for the Gaussian small and fixed
/// `r` regimes and for both codimension regimes, numeric otherwise.
pub fn rate_function(model: ModelSpec, regime: RegimeTag, xs: &[f64]) -> Result<RateFunctionTable> {
    coverage(model, regime)?;
    let gaussian = model.kind() == ModelKind::Gaussian;
    let closed: Option<fn(f64) -> f64> = match regime {
        RegimeTag::SmallR | RegimeTag::FixedR { .. } if gaussian => Some(|x| 0.5 * ((2.0 * x).exp() - 1.0) - x),
        RegimeTag::FullCodimSmall | RegimeTag::FixedCodim { .. } => Some(|x| 0.5 * x * x),
        _ => None,
    };
    match closed {
        Some(i) => Ok(RateFunctionTable {
            xs: xs.to_vec(),
            values: xs.iter().map(|&x| i(x)).collect(),
            source: RateSource::ClosedForm,
            regime,
            model,
        }),
        None => rate_function_numeric(model, regime, xs),
    }
}
