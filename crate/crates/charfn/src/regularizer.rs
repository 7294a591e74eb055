//! The regularising functions of one mode.
//!
//! With `ψ(t) = log|G_k(t)|` and the anchor `τ₀ = √(¼ + μ)`:
//!
//! ```text
//! h_{μ,k}(t) = ψ'(t) − (t/τ₀)·ψ'(τ₀)
//! H_{μ,k}(t) = ψ(t) − ψ(τ₀) − (t² − τ₀²)/(2τ₀)·ψ'(τ₀)
//! ```
//!
//! `H` is the primitive of `h` vanishing at `τ₀`, and since `h(τ₀) = 0` too it
//! factors as `H = (τ₀² − t²)²·H̃`.

use crate::{CharError, CuspBundle, ModeChar, RealOrderMode, Result, DEFAULT_DELTA};
use num_complex::Complex64;
use quadsum::gauss_legendre;

fn anchor(mu: f64) -> Result<f64> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(CharError::Bundle(format!("mu = {mu} must be nonnegative")));
    }
    Ok((0.25 + mu).sqrt())
}

fn psi(k: i64, t: f64, bundle: &CuspBundle) -> Result<RealOrderMode> {
    let m = RealOrderMode::new(k, t, bundle)?;
    if m.g == 0.0 || !m.g.is_finite() {
        return Err(CharError::PoleProximity(m.g.abs()));
    }
    Ok(m)
}

fn h_real(k: i64, t: f64, tau0: f64, anchor_slope: f64, bundle: &CuspBundle) -> Result<f64> {
    Ok(psi(k, t, bundle)?.dlog_g() - t / tau0 * anchor_slope)
}

/// `h_{μ,k}(t)`. Real for real `t`, odd in `t`.
pub fn h_reg(k: i64, t: f64, mu: f64, bundle: &CuspBundle) -> Result<Complex64> {
    let tau0 = anchor(mu)?;
    let slope = psi(k, tau0, bundle)?.dlog_g();
    Ok(Complex64::new(h_real(k, t, tau0, slope, bundle)?, 0.0))
}

/// `H_{μ,k}(t)`, the primitive of [`h_reg`] vanishing at `√(¼ + μ)`.
#[allow(non_snake_case)]
pub fn H_reg(k: i64, t: f64, mu: f64, bundle: &CuspBundle) -> Result<Complex64> {
    let tau0 = anchor(mu)?;
    if t.abs() == tau0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let a = psi(k, tau0, bundle)?;
    let m = psi(k, t, bundle)?;
    let v = m.log_abs_g() - a.log_abs_g() - (t * t - tau0 * tau0) / (2.0 * tau0) * a.dlog_g();
    Ok(Complex64::new(v, 0.0))
}

/// `H̃ = H/(τ₀² − t²)²`, continued smoothly through `t = τ₀`.
pub fn htilde(k: i64, t: f64, mu: f64, bundle: &CuspBundle) -> Result<f64> {
    let tau0 = anchor(mu)?;
    let t = t.abs();
    let gap = t - tau0;
    let denom = (tau0 * tau0 - t * t).powi(2);
    if gap.abs() >= 0.05 * tau0 {
        return Ok(H_reg(k, t, mu, bundle)?.re / denom);
    }
    let slope = psi(k, tau0, bundle)?.dlog_g();
    if gap.abs() <= 1e-6 * tau0 {
        // H ≈ ½h'(τ₀)(t−τ₀)² and (τ₀²−t²)² ≈ 4τ₀²(t−τ₀)²
        let d = 1e-4 * tau0;
        let hp = (h_real(k, tau0 + d, tau0, slope, bundle)? - h_real(k, tau0 - d, tau0, slope, bundle)?) / (2.0 * d);
        return Ok(hp / (8.0 * tau0 * tau0));
    }
    // near the double zero, integrate h instead of differencing ψ
    let mut failure = None;
    let v = gauss_legendre(
        |s| match h_real(k, s, tau0, slope, bundle) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        tau0,
        t,
        12,
        1,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(v / denom)
}

/// `h`, `H` and the split point `2|k|^δ·τ₀` (or `2τ₀` for `k = 0`) at one `t`.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizerSample {
    pub mode: ModeChar,
    pub mu: f64,
    pub t: f64,
    pub h_value: Complex64,
    pub H_value: Complex64,
    pub split_point: f64,
}

/// Build a [`RegularizerSample`]; `delta` defaults to [`DEFAULT_DELTA`].
pub fn regularizer_sample(k: i64, t: f64, mu: f64, bundle: &CuspBundle, delta: Option<f64>) -> Result<RegularizerSample> {
    let delta = delta.unwrap_or(DEFAULT_DELTA);
    validate_delta(delta)?;
    let tau0 = anchor(mu)?;
    let split_point = if k == 0 { 2.0 * tau0 } else { 2.0 * (k.unsigned_abs() as f64).powf(delta) * tau0 };
    Ok(RegularizerSample {
        mode: ModeChar::new(k, bundle)?,
        mu,
        t,
        h_value: h_reg(k, t, mu, bundle)?,
        H_value: H_reg(k, t, mu, bundle)?,
        split_point,
    })
}

/// `0 < δ < 1/6` and `1/(2δ)` not an integer.
pub(crate) fn validate_delta(delta: f64) -> Result<()> {
    let inv = 0.5 / delta;
    if !(delta > 0.0 && delta < 1.0 / 6.0) || (inv - inv.round()).abs() < 1e-9 {
        return Err(CharError::Bundle(format!("delta = {delta} must lie in (0, 1/6) with 1/(2δ) not an integer")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchor_is_a_zero() {
        let b = CuspBundle::new(0.3, 1.0).unwrap();
        assert_eq!(H_reg(1, 1.25f64.sqrt(), 1.0, &b).unwrap(), Complex64::new(0.0, 0.0));
        assert!(h_reg(1, 1.25f64.sqrt(), 1.0, &b).unwrap().norm() < 1e-14);
    }

    #[test]
    fn htilde_is_continuous_through_anchor() {
        let b = CuspBundle::new(0.3, 1.0).unwrap();
        let tau0 = 1.25f64.sqrt();
        let at = htilde(2, tau0, 1.0, &b).unwrap();
        let near = htilde(2, tau0 * 1.01, 1.0, &b).unwrap();
        let far = htilde(2, tau0 * 1.06, 1.0, &b).unwrap();
        assert!((at - near).abs() < 0.05 * at.abs(), "{at} {near}");
        assert!((near - far).abs() < 0.1 * near.abs(), "{near} {far}");
    }

    #[test]
    fn delta_validation() {
        assert!(validate_delta(0.15).is_ok());
        assert!(validate_delta(0.125).is_err());
        assert!(validate_delta(0.2).is_err());
        assert!(validate_delta(0.0).is_err());
    }
}
