//! Exact mod-φ ratios `log E e^{t X_n} − w_n η(t)` and their limit functions.

use serde::{Deserialize, Serialize};

use crate::cumulants::{beta_centering, gaussian_centering};
use crate::error::{domain, Error, Result};
use crate::moments::{log_mgf_log_volume, ModelSpec, SimplexDims};
use crate::special::{ln_barnes_g, ln_gamma_ratio, polygamma_unchecked};

/// One of the mod-φ settings. A Beta shape `nu = 0` selects the spherical model.
///
/// The diverging-codimension cases use `n − r = ⌊n^exponent⌋` with
/// `exponent ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum ModPhiCase {
    GaussFixedR { r: usize },
    BetaFixedR { r: usize, nu: f64 },
    /// `n (log X_n − ψ(n))` with `X_n ~ Gamma(n, 1)`.
    ExpGamma,
    GaussFullDim,
    BetaFullDim { nu: f64 },
    GaussFixedCodim { d: usize },
    BetaFixedCodim { d: usize, nu: f64 },
    GaussDivergingCodim { exponent: f64 },
    BetaDivergingCodim { nu: f64, exponent: f64 },
}

fn beta_model(nu: f64) -> Result<ModelSpec> {
    if nu == 0.0 {
        Ok(ModelSpec::spherical())
    } else {
        ModelSpec::beta(nu)
    }
}

/// `x log x` extended by 0 at 0.
pub(crate) fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

impl ModPhiCase {
    /// Stable identifier used in tables.
    pub fn case_id(&self) -> &'static str {
        match self {
            ModPhiCase::GaussFixedR { .. } => "gauss-fixed-r",
            ModPhiCase::BetaFixedR { .. } => "beta-fixed-r",
            ModPhiCase::ExpGamma => "exp-gamma",
            ModPhiCase::GaussFullDim => "gauss-full-dim",
            ModPhiCase::BetaFullDim { .. } => "beta-full-dim",
            ModPhiCase::GaussFixedCodim { .. } => "gauss-fixed-codim",
            ModPhiCase::BetaFixedCodim { .. } => "beta-fixed-codim",
            ModPhiCase::GaussDivergingCodim { .. } => "gauss-diverging-codim",
            ModPhiCase::BetaDivergingCodim { .. } => "beta-diverging-codim",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        match *self {
            ModPhiCase::GaussFixedR { r: 0 } | ModPhiCase::BetaFixedR { r: 0, .. } => {
                return bad("fixed-r cases need r >= 1".into())
            }
            ModPhiCase::GaussFixedCodim { d: 0 } | ModPhiCase::BetaFixedCodim { d: 0, .. } => {
                return bad("fixed-codimension cases need d >= 1".into())
            }
            ModPhiCase::GaussDivergingCodim { exponent } | ModPhiCase::BetaDivergingCodim { exponent, .. }
                if !(exponent > 0.0 && exponent < 1.0) =>
            {
                return bad(format!("codimension exponent must lie in (0, 1), got {exponent}"))
            }
            _ => {}
        }
        if let Some(nu) = self.nu() {
            beta_model(nu)?;
        }
        Ok(())
    }

    fn nu(&self) -> Option<f64> {
        match *self {
            ModPhiCase::BetaFixedR { nu, .. }
            | ModPhiCase::BetaFullDim { nu }
            | ModPhiCase::BetaFixedCodim { nu, .. }
            | ModPhiCase::BetaDivergingCodim { nu, .. } => Some(nu),
            _ => None,
        }
    }

    /// Point model of the case; `None` for [`ModPhiCase::ExpGamma`].
    pub fn model(&self) -> Result<Option<ModelSpec>> {
        Ok(match self {
            ModPhiCase::ExpGamma => None,
            _ => Some(match self.nu() {
                Some(nu) => beta_model(nu)?,
                None => ModelSpec::gaussian(),
            }),
        })
    }

    /// Simplex dimensions at ambient dimension `n`; `None` for [`ModPhiCase::ExpGamma`].
    pub fn dims_at(&self, n: usize) -> Result<Option<SimplexDims>> {
        self.validate()?;
        let r = match *self {
            ModPhiCase::ExpGamma => return Ok(None),
            ModPhiCase::GaussFixedR { r } | ModPhiCase::BetaFixedR { r, .. } => r,
            ModPhiCase::GaussFullDim | ModPhiCase::BetaFullDim { .. } => n,
            ModPhiCase::GaussFixedCodim { d } | ModPhiCase::BetaFixedCodim { d, .. } => n.saturating_sub(d),
            ModPhiCase::GaussDivergingCodim { exponent } | ModPhiCase::BetaDivergingCodim { exponent, .. } => {
                n.saturating_sub((n as f64).powf(exponent).floor() as usize)
            }
        };
        if r == 0 || r > n || (r == n && matches!(self, ModPhiCase::GaussDivergingCodim { .. } | ModPhiCase::BetaDivergingCodim { .. })) {
            return Err(Error::InvalidParameters(format!("{} has no valid r at n={n}", self.case_id())));
        }
        Ok(Some(SimplexDims::new(n, r)?))
    }

    /// Open lower end of the admissible real `t`.
    pub fn t_min(&self) -> f64 {
        match *self {
            ModPhiCase::GaussFixedCodim { d } | ModPhiCase::BetaFixedCodim { d, .. } => -(d as f64) - 1.0,
            _ => -1.0,
        }
    }

    fn check_t(&self, t: f64) -> Result<()> {
        self.validate()?;
        let lo = self.t_min();
        if !(t.is_finite() && t > lo) {
            return Err(domain!("{} needs real t > {lo}, got {t}", self.case_id()));
        }
        Ok(())
    }
}

fn tilted_stable(t: f64) -> f64 {
    (t + 1.0) * (t + 1.0).ln() - t
}

/// `η(t)` of the fixed-`r` Beta and spherical simplex.
pub(crate) fn beta_fixed_r_eta(r: f64, t: f64) -> f64 {
    let u = t + 1.0;
    0.5 * (xlogx((r + 1.0) * u) - xlogx(r * u + 1.0) - xlogx(u))
}

/// `log` of the mod-φ ratio at dimension `n`; converges to [`mod_phi_limit`].
pub fn mod_phi_ratio(case: ModPhiCase, n: usize, t: f64) -> Result<f64> {
    case.check_t(t)?;
    if n == 0 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    let nf = n as f64;
    if let ModPhiCase::ExpGamma = case {
        return Ok(-t * nf * polygamma_unchecked(0, nf) + ln_gamma_ratio(nf, t * nf) - nf * tilted_stable(t));
    }
    let model = case.model()?.expect("geometric case");
    let dims = case.dims_at(n)?.expect("geometric case");
    let r = dims.r() as f64;
    let log_m = |s: f64| log_mgf_log_volume(model, dims, s);
    let half_log_n2 = (nf / 2.0).ln();
    Ok(match case {
        ModPhiCase::GaussFixedR { .. } => {
            log_m(t * nf)? - t * nf * (0.5 * r * nf.ln() + 0.5 * (r + 1.0).ln()) - 0.5 * r * nf * tilted_stable(t)
        }
        ModPhiCase::BetaFixedR { .. } => log_m(t * nf)? - nf * beta_fixed_r_eta(r, t),
        ModPhiCase::GaussFullDim | ModPhiCase::GaussFixedCodim { .. } => {
            log_m(t)? - t * gaussian_centering(nf) - 0.25 * t * t * half_log_n2
        }
        ModPhiCase::BetaFullDim { nu } => {
            log_m(t)? - t * beta_centering(nf, nu) - 0.25 * t * t * (half_log_n2 - 1.0)
        }
        ModPhiCase::BetaFixedCodim { d, nu } => {
            log_m(t)? - t * (beta_centering(nf, nu) + 0.5 * d as f64 * nf.ln()) - 0.25 * t * t * (half_log_n2 - 1.0)
        }
        ModPhiCase::GaussDivergingCodim { .. } => {
            let c = nf - r;
            log_m(t)?
                - t * (gaussian_centering(nf) - gaussian_centering(c) + 0.5 * ((r + 1.0) * c / nf).ln())
                - 0.25 * t * t * (nf / c).ln()
        }
        ModPhiCase::BetaDivergingCodim { nu, .. } => {
            let c = nf - r;
            log_m(t)?
                - t * (gaussian_centering(nf) - gaussian_centering(c) - (r + 1.0) / (4.0 * nf) * (t - 2.0 + 2.0 * nu))
                - 0.5 * t * (c.ln() + (1.0 + r).ln() - (1.0 + r) * nf.ln())
                - 0.25 * t * t * (nf / c).ln()
        }
        ModPhiCase::ExpGamma => unreachable!(),
    })
}

/// `log ψ(t)`, the limit of [`mod_phi_ratio`] as `n → ∞`.
pub fn mod_phi_limit(case: ModPhiCase, t: f64) -> Result<f64> {
    case.check_t(t)?;
    let lu = (1.0 + t).ln();
    Ok(match case {
        ModPhiCase::GaussFixedR { r } => {
            let r = r as f64;
            -r * (r + 1.0) / 4.0 * lu
        }
        ModPhiCase::BetaFixedR { r, nu } => {
            let r = r as f64;
            let u = t + 1.0;
            ((1.0 - nu * (r + 1.0)) / 2.0 - r * (r - 1.0) / 4.0) * lu
                + (nu * (r + 1.0) - 2.0 * r - 1.0) / 2.0 * ((r + 1.0) * u / (r * u + 1.0)).ln()
        }
        ModPhiCase::ExpGamma => t / 2.0 - 0.5 * lu,
        ModPhiCase::GaussFullDim | ModPhiCase::BetaFullDim { .. } => {
            ln_barnes_g(0.5) - ln_barnes_g(0.5 + t / 2.0) - ln_barnes_g(1.0 + t / 2.0)
        }
        ModPhiCase::GaussFixedCodim { d } | ModPhiCase::BetaFixedCodim { d, .. } => {
            let d = d as f64;
            ln_barnes_g((d + 1.0) / 2.0) + ln_barnes_g((d + 2.0) / 2.0)
                - t * d / 2.0 * std::f64::consts::LN_2
                - ln_barnes_g((d + 1.0 + t) / 2.0)
                - ln_barnes_g((d + 2.0 + t) / 2.0)
        }
        ModPhiCase::GaussDivergingCodim { .. } | ModPhiCase::BetaDivergingCodim { .. } => 0.0,
    })
}

/// One row of a convergence table; `ratio` and `limit` are on the linear scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub case_id: String,
    pub n: usize,
    pub t: f64,
    pub ratio: f64,
    pub limit: f64,
    pub abs_error: f64,
}

/// Ratio against limit for every `(n, t)` pair, `n` varying slowest.
pub fn convergence_table(case: ModPhiCase, ns: &[usize], ts: &[f64]) -> Result<Vec<ConvergenceRow>> {
    let mut rows = Vec::with_capacity(ns.len() * ts.len());
    for &n in ns {
        for &t in ts {
            let ratio = mod_phi_ratio(case, n, t)?.exp();
            let limit = mod_phi_limit(case, t)?.exp();
            rows.push(ConvergenceRow {
                case_id: case.case_id().to_string(),
                n,
                t,
                ratio,
                limit,
                abs_error: (ratio - limit).abs(),
            });
        }
    }
    Ok(rows)
}
