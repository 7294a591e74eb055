//! Exponential integral `E₁`.

use crate::gamma::EULER_GAMMA;
use crate::{Result, SpecError};

/// `e^x E₁(x)`, which stays O(1/x) for large `x`.
///
/// Power series below 0.8, modified-Lentz continued fraction above.
pub fn exp_integral_e1_scaled(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecError::Domain(x));
    }
    if x < 0.8 {
        return Ok(x.exp() * series(x));
    }
    // E₁(x) = e^{−x} / (x + 1 − 1²/(x + 3 − 2²/(x + 5 − …)))
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    Ok(h)
}

/// `E₁(x) = ∫_x^∞ e^{−u}/u du` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecError::Domain(x));
    }
    if x < 0.8 {
        return Ok(series(x));
    }
    Ok(exp_integral_e1_scaled(x)? * (-x).exp())
}

fn series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for n in 1..200 {
        term *= -x / n as f64;
        let t = term / n as f64;
        sum += t;
        if t.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}
