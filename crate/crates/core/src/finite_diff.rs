//! Central finite differences with Richardson extrapolation.
//!
//! Used as an independent check of analytic derivatives. The stencils for
//! orders 1 to 4 all have error expansions in even powers of `h`, so each
//! halving of the step can be combined with the previous level to cancel one
//! more term (Ridders' tableau).

use crate::error::{domain, Result};

/// Estimate of a derivative and of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub error: f64,
}

fn stencil(f: &impl Fn(f64) -> f64, x: f64, m: u32, h: f64) -> f64 {
    match m {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        2 => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
        3 => (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h.powi(3)),
        _ => {
            (f(x + 2.0 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / h.powi(4)
        }
    }
}

/// `d^m f/dx^m` at `x` for `m ∈ 1..=4`, starting from step `h` and halving.
///
/// The stencil reaches at most `2h` from `x`; `f` must be smooth there.
pub fn derivative(f: impl Fn(f64) -> f64, x: f64, m: u32, h: f64) -> Result<Derivative> {
    if !(1..=4).contains(&m) {
        return Err(domain!("finite differences cover orders 1..=4, got {m}"));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(domain!("step must be positive, got {h}"));
    }
    const LEVELS: usize = 8;
    let mut table = [[0.0f64; LEVELS]; LEVELS];
    let mut best = Derivative { value: f64::NAN, error: f64::INFINITY };
    let mut step = h;
    for i in 0..LEVELS {
        table[i][0] = stencil(&f, x, m, step);
        let mut factor = 4.0;
        for j in 1..=i {
            table[i][j] = (factor * table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
            factor *= 4.0;
            let err = (table[i][j] - table[i][j - 1]).abs().max((table[i][j] - table[i - 1][j - 1]).abs());
            if err <= best.error {
                best = Derivative { value: table[i][j], error: err };
            }
        }
        if i > 0 && (table[i][i] - table[i - 1][i - 1]).abs() >= 2.0 * best.error {
            break;
        }
        step /= 2.0;
    }
    if best.value.is_nan() {
        best = Derivative { value: table[0][0], error: f64::INFINITY };
    }
    Ok(best)
}
