//! Large-order and large-argument expansions of `g_k`.

use crate::{CharError, CuspBundle, ModeChar, Result};
use num_complex::Complex64;
use specfun::{ComplexOrder, ExpansionWithBound};
use std::f64::consts::PI;

/// Smallest `t` at which [`log_abs_g_asymptotic`] is offered.
pub const LOG_G_MIN_ORDER: f64 = 10.0;

/// Remainder envelope `C/(X² + t²)` of [`log_abs_g_asymptotic`] uses
/// `C = LOG_G_ENVELOPE·(1 + 4παa)²`. The leading omitted term is
/// `−ε²/2` with `ε·(R₊+R₋) ≈ 4παa + O(1)`, which fixes the bundle
/// dependence; the factor was fitted over `α ∈ [0, 0.95]`, `a ∈ [0.1, 10]`,
/// `|k| ≤ 6`, `t ∈ [10, 400]` (largest ratio 0.84) and rounded up.
pub const LOG_G_ENVELOPE: f64 = 1.0;

/// Envelope constant of [`g_large_argument`]: the remainder is bounded by
/// `C·(1 + |ν|²)²·(1/x₊² + 1/x₋²)`, which carries the `1/(k²a²)` scaling of
/// the first omitted term `−(4ν² + 1)/8·(1/x₊² + 1/x₋²)`.
pub const LARGE_ARG_G_ENVELOPE: f64 = 1.0;

/// `log(R₊+R₋) − 4παa/(R₊+R₋) − ½t²/(R₊+R₋)·(1/R₊² + 1/R₋²)` with
/// `R± = √(x±² + t²)`.
pub fn log_abs_g_expansion(k: i64, t: f64, bundle: &CuspBundle) -> Result<f64> {
    let m = ModeChar::new(k, bundle)?;
    let rp = m.x_plus.hypot(t);
    let rm = m.x_minus.hypot(t);
    let s = rp + rm;
    Ok(s.ln() - 4.0 * PI * bundle.alpha * bundle.a / s - 0.5 * t * t / s * (1.0 / (rp * rp) + 1.0 / (rm * rm)))
}

/// Large-order expansion of `log|g_k(it)|` with envelope
/// `C/(4π²k²(1−α)²a² + t²)` for `k ≠ 0` and `C/(4π²α²a² + t²)` for `k = 0`.
pub fn log_abs_g_asymptotic(k: i64, t: f64, bundle: &CuspBundle) -> Result<ExpansionWithBound<f64>> {
    if !(t >= LOG_G_MIN_ORDER) {
        return Err(CharError::Validity(format!("t = {t} below {LOG_G_MIN_ORDER}")));
    }
    let value = log_abs_g_expansion(k, t, bundle)?;
    let scale = if k == 0 { bundle.alpha } else { k as f64 * (1.0 - bundle.alpha) };
    let x = 2.0 * PI * scale * bundle.a;
    let c = LOG_G_ENVELOPE * bundle.boundary_constant().powi(2);
    Ok(ExpansionWithBound { value, remainder_bound: c / (x * x + t * t), order_used: 2 })
}

/// Large-argument expansion of `g_k` at Bessel order `β = iν`:
/// `4παa − 2π(|k+α|+|k−α|)a + (4ν²+1)/(16πa)·(1/|k+α| + 1/|k−α|)`.
///
/// Offered when `min x± ≥ 10(1 + |ν|²)`.
pub fn g_large_argument(k: i64, order: ComplexOrder, bundle: &CuspBundle) -> Result<ExpansionWithBound<Complex64>> {
    let m = ModeChar::new(k, bundle)?;
    let beta = order.as_complex();
    let nu2 = -(beta * beta);
    let size = 1.0 + nu2.norm();
    let xmin = m.x_plus.min(m.x_minus);
    if !(xmin >= 10.0 * size) {
        return Err(CharError::Validity(format!("argument {xmin} below 10(1 + |ν|²) = {}", 10.0 * size)));
    }
    let (a, alpha, kf) = (bundle.a, bundle.alpha, k as f64);
    let (sp, sm) = ((kf + alpha).abs(), (kf - alpha).abs());
    let value = Complex64::new(4.0 * PI * alpha * a - 2.0 * PI * (sp + sm) * a, 0.0)
        + (4.0 * nu2 + 1.0) / (16.0 * PI * a) * (1.0 / sp + 1.0 / sm);
    let remainder_bound =
        LARGE_ARG_G_ENVELOPE * size * size * (1.0 / (m.x_plus * m.x_plus) + 1.0 / (m.x_minus * m.x_minus));
    Ok(ExpansionWithBound { value, remainder_bound, order_used: 2 })
}
