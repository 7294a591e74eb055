use crate::{CharError, Result};
use std::f64::consts::PI;

/// Default splitting exponent. It satisfies `δ < 1/6` and `1/(2δ) = 10/3`
/// is not an integer.
pub const DEFAULT_DELTA: f64 = 0.15;

/// The flat line bundle on the cusp: holonomy `e^{2πiα}` and height `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspBundle {
    pub alpha: f64,
    pub a: f64,
}

impl CuspBundle {
    pub fn new(alpha: f64, a: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(CharError::Bundle(format!("alpha = {alpha} must lie in [0, 1)")));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(CharError::Bundle(format!("a = {a} must be positive")));
        }
        Ok(Self { alpha, a })
    }

    /// Zeros of every `f_k`, `k ≠ 0`, are then real and simple.
    pub fn localization_guaranteed(&self) -> bool {
        self.a > 1.0 / (4.0 * PI * (1.0 - self.alpha))
    }

    /// `1 + 4παa`
    pub fn boundary_constant(&self) -> f64 {
        1.0 + 4.0 * PI * self.alpha * self.a
    }

    /// Whether Fourier mode `k` is part of the problem.
    pub fn has_mode(&self, k: i64) -> bool {
        k != 0 || self.alpha != 0.0
    }
}

/// Bessel arguments `x± = 2π|k ± α|a` of one Fourier mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeChar {
    pub k: i64,
    pub x_plus: f64,
    pub x_minus: f64,
}

impl ModeChar {
    pub fn new(k: i64, bundle: &CuspBundle) -> Result<Self> {
        if !bundle.has_mode(k) {
            return Err(CharError::TrivialMode);
        }
        let kf = k as f64;
        Ok(Self {
            k,
            x_plus: 2.0 * PI * (kf + bundle.alpha).abs() * bundle.a,
            x_minus: 2.0 * PI * (kf - bundle.alpha).abs() * bundle.a,
        })
    }
}
