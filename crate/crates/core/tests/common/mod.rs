//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use simplex_limits::special::EULER_GAMMA;

/// ψ^(m)(z) from its defining series, summed smallest-first, with the tail
/// past `K` replaced by the midpoint-rule integral.
pub fn polygamma_series(m: u32, z: f64) -> f64 {
    const K: usize = 100_000;
    let kf = K as f64;
    if m == 0 {
        // ψ(z) = −γ + Σ_k (1/(k+1) − 1/(k+z))
        let mut s = ((kf - 0.5 + z) / (kf + 0.5)).ln();
        for k in (0..K).rev() {
            let k = k as f64;
            s += 1.0 / (k + 1.0) - 1.0 / (k + z);
        }
        return s - EULER_GAMMA;
    }
    let fact_m1: f64 = (1..m).map(f64::from).product();
    let fact_m = fact_m1 * m as f64;
    let mut s = fact_m1 / (kf - 0.5 + z).powi(m as i32);
    for k in (0..K).rev() {
        s += fact_m / (k as f64 + z).powi(m as i32 + 1);
    }
    if m % 2 == 1 {
        s
    } else {
        -s
    }
}
