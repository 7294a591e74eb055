//! Gamma and polygamma functions.

use crate::zeta::hurwitz_zeta;
use crate::{Result, SpecError};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `Γ(x)` for real `x` off the nonpositive integers.
pub fn gamma(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.floor() {
        return Err(SpecError::Pole(x));
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// `log Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(SpecError::Domain(x));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// `ψ(x) = Γ'(x)/Γ(x)` off the nonpositive integers.
pub fn digamma(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.floor() {
        return Err(SpecError::Pole(x));
    }
    Ok(statrs::function::gamma::digamma(x))
}

/// `ψ'(x) = ζ(2, x)` for `x > 0`.
pub fn trigamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(SpecError::Domain(x));
    }
    hurwitz_zeta(2.0, x)
}
