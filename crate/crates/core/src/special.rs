//! Log-gamma, polygamma and Barnes G on the positive half-line.
//!
//! Every routine works on real arguments `z > 0`. Small arguments are pushed
//! above a threshold with the standard recurrences, after which the
//! Bernoulli-number asymptotic series is summed. The Barnes G-function is
//! reduced to the base interval `[1, 2]` through `G(z + 1) = Γ(z) G(z)` and
//! evaluated there from the logarithm of its Weierstrass product, with the
//! tail of the product summed in closed form through Hurwitz zeta values.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// The Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `½ (γ + 1 + π²/8)`: limit of `¼ Σ_{j≤n} ψ′(j/2) − ½ log n`.
pub const C1: f64 = 0.5 * (EULER_GAMMA + 1.0 + PI * PI / 8.0);

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Bernoulli numbers `B_2, B_4, …, B_30`.
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// Below this the log-gamma routines shift the argument upward.
const LGAMMA_SHIFT: f64 = 10.0;

/// Strictly positive, finite real argument.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct RealArg(f64);

impl RealArg {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(domain!("argument must be finite and > 0, got {value}"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for RealArg {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

/// Constants that appear in the polygamma sum asymptotics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NamedConstants {
    pub euler_gamma: f64,
    pub c1: f64,
}

impl Default for NamedConstants {
    fn default() -> Self {
        Self {
            euler_gamma: EULER_GAMMA,
            c1: C1,
        }
    }
}

fn stirling_tail(x: f64) -> f64 {
    // Σ B_2k / (2k (2k−1) x^(2k−1)), eight terms suffice for x ≥ 10.
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut sum = 0.0;
    for (i, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        let k = (i + 1) as f64;
        sum += b / (2.0 * k * (2.0 * k - 1.0)) * pow;
        pow *= inv2;
    }
    sum
}

/// `log Γ(z)` without argument validation.
pub(crate) fn ln_gamma(z: f64) -> f64 {
    if z < LGAMMA_SHIFT {
        let mut x = z;
        let mut prod = 1.0;
        while x < LGAMMA_SHIFT {
            prod *= x;
            x += 1.0;
        }
        ln_gamma_large(x) - prod.ln()
    } else {
        ln_gamma_large(z)
    }
}

fn ln_gamma_large(x: f64) -> f64 {
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + stirling_tail(x)
}

/// Natural logarithm of the gamma function.
///
/// Absolute error is a few ulps of `max(1, |log Γ(z)|)`.
pub fn log_gamma(z: f64) -> Result<f64> {
    let z = RealArg::new(z)?.get();
    Ok(ln_gamma(z))
}

/// `log Γ(x + a) − log Γ(x)` evaluated without forming either term.
///
/// Requires `x > 0` and `x + a > 0`. The error is relative to the difference
/// itself, which keeps finite differences of long sums of such terms usable.
pub fn log_gamma_ratio(x: f64, a: f64) -> Result<f64> {
    if !(x.is_finite() && a.is_finite() && x > 0.0 && x + a > 0.0) {
        return Err(domain!("log_gamma_ratio needs x > 0 and x + a > 0, got x={x}, a={a}"));
    }
    Ok(ln_gamma_ratio(x, a))
}

pub(crate) fn ln_gamma_ratio(x: f64, a: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let mut u = x;
    let mut acc = 0.0;
    // log Γ(u + a) − log Γ(u) = [same at u + 1] − log(1 + a/u)
    while u < LGAMMA_SHIFT || u + a < LGAMMA_SHIFT {
        acc -= (a / u).ln_1p();
        u += 1.0;
    }
    let v = u + a;
    let main = (u - 0.5) * (a / u).ln_1p() + a * v.ln() - a;
    acc + main + (stirling_tail(v) - stirling_tail(u))
}

fn digamma(z: f64) -> f64 {
    let mut x = z;
    let mut shift = 0.0;
    while x < LGAMMA_SHIFT {
        shift += 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut pow = inv2;
    let mut series = 0.0;
    for (i, b) in BERNOULLI_EVEN.iter().take(10).enumerate() {
        let k2 = 2.0 * (i + 1) as f64;
        series += b / k2 * pow;
        pow *= inv2;
    }
    x.ln() - 0.5 / x - series - shift
}

/// `ψ^(m)(z)` without argument validation (`m ≥ 1`).
fn polygamma_pos(m: u32, z: f64) -> f64 {
    let mf = m as f64;
    let threshold = 10.0 + mf;
    let mut x = z;
    let mut shift = 0.0;
    while x < threshold {
        shift += x.powi(-(m as i32) - 1);
        x += 1.0;
    }
    // (m−1)!, m! as floats; m is small in every use but keep the product exact-ish.
    let fact_m1: f64 = (1..m).map(f64::from).product();
    let fact_m = fact_m1 * mf;

    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let lead = fact_m1 * inv.powi(m as i32);
    let mut sum = lead + 0.5 * fact_m * inv.powi(m as i32 + 1);
    // term_k = B_2k (2k+m−1)! / ((2k)! x^(2k+m))
    let mut ratio = 1.0; // (2k+m−1)! / ((2k)! (m−1)!)
    let mut pow = lead;
    for (i, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k2 = 2.0 * (i + 1) as f64;
        ratio *= (k2 + mf - 2.0) * (k2 + mf - 1.0) / ((k2 - 1.0) * k2);
        pow *= inv2;
        let term = b * ratio * pow;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    sign * (fact_m * shift + sum)
}

pub(crate) fn polygamma_unchecked(m: u32, z: f64) -> f64 {
    if m == 0 {
        digamma(z)
    } else {
        polygamma_pos(m, z)
    }
}

/// Polygamma function `ψ^(m)(z) = d^(m+1)/dz^(m+1) log Γ(z)`; `m = 0` is the digamma function.
pub fn polygamma(m: u32, z: f64) -> Result<f64> {
    let z = RealArg::new(z)?.get();
    let v = polygamma_unchecked(m, z);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("polygamma({m}, {z}) is not representable")))
    }
}

/// Upper bound `(m−1)!/z^m + m!/z^(m+1)` on `|ψ^(m)(z)|`, `m ≥ 1`.
pub fn polygamma_bound(m: u32, z: f64) -> Result<f64> {
    if m == 0 {
        return Err(domain!("polygamma_bound needs m >= 1"));
    }
    let z = RealArg::new(z)?.get();
    let mf = m as f64;
    let lz = z.ln();
    let v = (ln_gamma(mf) - mf * lz).exp() + (ln_gamma(mf + 1.0) - (mf + 1.0) * lz).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("polygamma_bound({m}, {z}) is not representable")))
    }
}

/// Hurwitz zeta `ζ(s, a)` for `s > 1` and moderately large `a` (Euler-Maclaurin).
fn hurwitz_zeta_large_a(s: f64, a: f64) -> f64 {
    let mut sum = a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
    // Σ_j B_2j/(2j)! · s(s+1)…(s+2j−2) · a^(−s−2j+1)
    let mut rising = s;
    let mut fact = 2.0;
    let mut pow = a.powf(-s - 1.0);
    let inv2 = 1.0 / (a * a);
    for (j, b) in BERNOULLI_EVEN.iter().take(6).enumerate() {
        let j2 = 2.0 * (j + 1) as f64;
        sum += b / fact * rising * pow;
        rising *= (s + j2 - 1.0) * (s + j2);
        fact *= (j2 + 1.0) * (j2 + 2.0);
        pow *= inv2;
    }
    sum
}

const BARNES_TERMS: usize = 50;

/// `log G(1 + z)` for `z ∈ [0, 1]` from the Weierstrass product.
fn ln_barnes_g_base(z: f64) -> f64 {
    let z2 = z * z;
    let mut sum = 0.0;
    for k in 1..=BARNES_TERMS {
        let kf = k as f64;
        sum += kf * (z / kf).ln_1p() + z2 / (2.0 * kf) - z;
    }
    // Remaining terms: Σ_{k>K} Σ_{p≥3} (−1)^(p+1) z^p / (p k^(p−1)).
    let a = (BARNES_TERMS + 1) as f64;
    let mut tail = 0.0;
    let mut zp = z2 * z;
    for p in 3..40 {
        let pf = p as f64;
        let sign = if p % 2 == 1 { 1.0 } else { -1.0 };
        let term = sign * zp / pf * hurwitz_zeta_large_a(pf - 1.0, a);
        tail += term;
        if term.abs() < 1e-19 {
            break;
        }
        zp *= z;
    }
    0.5 * z * (2.0 * PI).ln() - 0.5 * (z + (1.0 + EULER_GAMMA) * z2) + sum + tail
}

pub(crate) fn ln_barnes_g(z: f64) -> f64 {
    if z < 1.0 {
        return ln_barnes_g_base(z) - ln_gamma(z);
    }
    if z <= 2.0 {
        return ln_barnes_g_base(z - 1.0);
    }
    let steps = (z.floor() - 1.0) as u64;
    let base = z - steps as f64;
    let mut acc = ln_barnes_g_base(base - 1.0);
    for i in 0..steps {
        acc += ln_gamma(base + i as f64);
    }
    acc
}

/// Natural logarithm of the Barnes G-function on `z > 0`.
///
/// Cost is linear in `z` (one log-gamma per unit step above 2).
pub fn log_barnes_g(z: f64) -> Result<f64> {
    let z = RealArg::new(z)?.get();
    Ok(ln_barnes_g(z))
}

/// Asymptotic approximation of `log G(z + a + 1) − log G(z + 1)`:
/// `a (z log z − z + log √(2π)) + ½ a² log z`, with error `O((|a|³ + 1)/z)`.
pub fn log_barnes_g_shift(z: f64, a: f64) -> Result<f64> {
    let z = RealArg::new(z)?.get();
    if !a.is_finite() || z + a <= 0.0 {
        return Err(domain!("log_barnes_g_shift needs z + a > 0, got z={z}, a={a}"));
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    let lz = z.ln();
    Ok(a * (z * lz - z + HALF_LN_2PI) + 0.5 * a * a * lz)
}
