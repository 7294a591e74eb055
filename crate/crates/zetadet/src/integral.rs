//! The integral route.
//!
//! Each Fourier mode contributes
//!
//! ```text
//! I_k(s) = (sin πs/π) ∫_{τ₀}^∞ (t² − τ₀²)^{−s} h_k(t) dt,   τ₀ = √(¼ + μ)
//! h_k(t) = φ_k'(t) − (t/τ₀)·φ_k'(τ₀),                      φ_k = log|F_k|
//! ```
//!
//! along the real-order axis, where `F_k` is the full characteristic function.
//! Mode 0 uses `F₀/(t² − ¼)`, which removes the kernel zero at `t = ½`; that
//! eigenvalue is added back as `μ^{−s}` when `μ > 0`. Modes `k` and `−k`
//! coincide, so `ζ = 2 Σ_{k≥1} I_k (+ I_0 + μ^{−s})`.
//!
//! The substitution `t = τ₀ cosh w` turns the endpoint singularity into the
//! weight `(τ₀ sinh w)^{1−2s}`. The linear counterterm is integrated in closed
//! form beyond `w = W_SPLIT`. Modes above `k_max` are summed from a fit of
//! `I_k` to powers `k^{1−2s−j}`.

use crate::fit::least_squares;
use crate::{check_mu, Result, Route, ZetaError, ZetaEval};
use charfn::mode0::{Mode0Reduced, STABLE_RADIUS};
use charfn::{CuspBundle, RealOrderMode};
use num_complex::Complex64;
use quadsum::{integrate_to, Bound};
use rayon::prelude::*;
use specfun::hurwitz_zeta_complex;
use std::f64::consts::PI;

const W_SPLIT: f64 = 2.0;
// Below this w the regulariser is replaced by its quadratic Taylor model,
// because h vanishes at τ₀ and direct subtraction would be pure rounding.
const W_TAYLOR: f64 = 0.02;
// Beyond this w the weight (τ₀ sinh w)^{1−2s} is below e^{−80}.
const W_MAX: f64 = 80.0;

/// Options for [`zeta_integral_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralOptions {
    /// Modes summed explicitly.
    pub k_max: u32,
    /// Relative quadrature tolerance per mode.
    pub tol: f64,
    /// Absolute quadrature floor per mode; the Bessel evaluations carry
    /// noise near 1e−16 that small high-k integrals cannot beat relatively.
    pub abs_tol: f64,
    /// Number of powers in the k-tail fit.
    pub fit_terms: usize,
    /// Include the kernel eigenvalue `μ^{−s}` when `α ≠ 0` and `μ > 0`.
    pub kernel_term: bool,
}

impl Default for IntegralOptions {
    fn default() -> Self {
        Self { k_max: 24, tol: 1e-10, abs_tol: 1e-15, fit_terms: 5, kernel_term: true }
    }
}

/// `∂_t log|F_k(t)|` on the real-order axis; for `k = 0` the kernel factor
/// `t² − ¼` is divided out.
pub fn mode_log_derivative(k: i64, t: f64, bundle: &CuspBundle) -> Result<f64> {
    if k == 0 {
        if (t - 0.5).abs() < STABLE_RADIUS {
            return Ok(Mode0Reduced::new(t, bundle)?.dlog_reduced());
        }
        let m = RealOrderMode::new(0, t, bundle)?;
        return Ok(m.dlog_f() - 2.0 * t / (t * t - 0.25));
    }
    Ok(RealOrderMode::new(k, t, bundle)?.dlog_f())
}

fn strip_check(s: Complex64) -> Result<()> {
    if s.re > 1.0 && s.re < 2.0 {
        Ok(())
    } else {
        Err(ZetaError::Strip(s.re))
    }
}

fn sin_pi_over_pi(s: Complex64) -> Complex64 {
    (s * PI).sin() / PI
}

/// `I_k(s)` for one mode (sign of `k` irrelevant), with its quadrature
/// error estimate.
pub fn mode_zeta_integral(k: i64, s: Complex64, mu: f64, bundle: &CuspBundle, tol: f64, abs_tol: f64) -> Result<(Complex64, f64)> {
    strip_check(s)?;
    check_mu(mu)?;
    if k == 0 && bundle.alpha == 0.0 {
        return Err(charfn::CharError::TrivialMode.into());
    }
    let k = k.abs();
    let tau0 = (0.25 + mu).sqrt();
    let slope = mode_log_derivative(k, tau0, bundle)?;
    let h = |t: f64| -> Result<f64> { Ok(mode_log_derivative(k, t, bundle)? - t / tau0 * slope) };
    let d = 2e-3 * tau0;
    let (hm, hp) = (h(tau0 - d)?, h(tau0 + d)?);
    let h1 = (hp - hm) / (2.0 * d);
    let h2 = (hp + hm) / (d * d);
    let one_minus_2s = Complex64::new(1.0, 0.0) - 2.0 * s;
    let ln_tau0 = tau0.ln();

    let mut failure: Option<ZetaError> = None;
    let mut body = |w: f64, full: bool| -> Complex64 {
        if w <= 0.0 || w > W_MAX {
            return Complex64::new(0.0, 0.0);
        }
        let weight = (one_minus_2s * (ln_tau0 + w.sinh().ln())).exp();
        let t = tau0 * w.cosh();
        let val = if full && w <= W_TAYLOR {
            let delta = 2.0 * tau0 * (0.5 * w).sinh().powi(2);
            h1 * delta + 0.5 * h2 * delta * delta
        } else if full {
            match h(t) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        } else {
            match mode_log_derivative(k, t, bundle) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        };
        weight * val
    };
    // split at W_TAYLOR so no panel straddles the switch to the Taylor model
    let taylor = integrate_to(|w| body(w, true), 0.0, W_TAYLOR, tol, abs_tol)?;
    let middle = integrate_to(|w| body(w, true), W_TAYLOR, W_SPLIT, tol, abs_tol)?;
    let far = integrate_to(|w| body(w, false), W_SPLIT, Bound::Infinity, tol, abs_tol)?;
    if let Some(e) = failure {
        return Err(e);
    }
    // ∫_{t₁}^∞ (t² − τ₀²)^{−s} t dt = ½ (t₁² − τ₀²)^{1−s}/(s − 1)
    let v1 = (tau0 * W_SPLIT.sinh()).powi(2);
    let one = Complex64::new(1.0, 0.0);
    let counter = -slope / tau0 * 0.5 * ((one - s) * v1.ln()).exp() / (s - one);
    let pref = sin_pi_over_pi(s);
    let value = pref * (taylor.value + middle.value + far.value + counter);
    let err = pref.norm() * (taylor.error_estimate + middle.error_estimate + far.error_estimate);
    Ok((value, err))
}

/// `ζ_{L,μ}(s)` on the strip `1 < Re s < 2` with `k_max` modes summed
/// explicitly and the rest from a fitted power-law tail.
pub fn zeta_integral(s: Complex64, mu: f64, bundle: &CuspBundle, k_max: u32) -> Result<ZetaEval> {
    zeta_integral_with(s, mu, bundle, &IntegralOptions { k_max, ..IntegralOptions::default() })
}

pub fn zeta_integral_with(s: Complex64, mu: f64, bundle: &CuspBundle, opts: &IntegralOptions) -> Result<ZetaEval> {
    strip_check(s)?;
    check_mu(mu)?;
    if opts.k_max < 1 {
        return Err(ZetaError::Parameter("k_max must be at least 1".into()));
    }
    let k_max = opts.k_max as i64;
    let first = if bundle.alpha == 0.0 { 1 } else { 0 };
    let modes: Vec<(Complex64, f64)> = (first..=k_max)
        .into_par_iter()
        .map(|k| mode_zeta_integral(k, s, mu, bundle, opts.tol, opts.abs_tol))
        .collect::<Result<_>>()?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut quad_err = 0.0;
    let mut per_mode = Vec::with_capacity(k_max as usize);
    for (k, (v, e)) in (first..=k_max).zip(&modes) {
        let mult = if k == 0 { 1.0 } else { 2.0 };
        value += mult * v;
        quad_err += mult * e;
        if k > 0 {
            per_mode.push((k, *v));
        }
    }
    if opts.kernel_term && bundle.alpha != 0.0 && mu > 0.0 {
        value += (-s * mu.ln()).exp();
    }
    let (tail, tail_err) = fitted_tail(&per_mode, s, opts.fit_terms)?;
    value += 2.0 * tail;
    Ok(ZetaEval { s, mu, value, truncation_estimate: 2.0 * tail_err + quad_err, route: Route::Integral })
}

/// `Σ_{k>K} I_k` from least-squares fits of `I_k ≈ Σ_j c_j k^{1−2s−j}` over
/// the upper half of the computed modes. The estimate is the change when
/// the fit drops its last power.
fn fitted_tail(per_mode: &[(i64, Complex64)], s: Complex64, terms: usize) -> Result<(Complex64, f64)> {
    let k_max = per_mode.last().map(|p| p.0).unwrap_or(0);
    let window: Vec<&(i64, Complex64)> = per_mode.iter().filter(|(k, _)| 2 * k >= k_max).collect();
    let terms = terms.min(window.len().saturating_sub(1)).max(1);
    let kf = k_max as f64;
    let tail_with = |n: usize| -> Result<Complex64> {
        let rows: Vec<Vec<Complex64>> = window
            .iter()
            .map(|(k, _)| (0..n).map(|j| power(*k as f64 / kf, s, j)).collect())
            .collect();
        let y: Vec<Complex64> = window.iter().map(|(_, v)| *v).collect();
        let c = least_squares(&rows, &y).ok_or_else(|| ZetaError::Extrapolation("singular k-tail fit".into()))?;
        let mut tail = Complex64::new(0.0, 0.0);
        for (j, cj) in c.iter().enumerate() {
            // Σ_{k>K} (k/K)^{1−2s−j} = K^{2s−1+j} ζ(2s − 1 + j, K + 1)
            let p = 2.0 * s - 1.0 + j as f64;
            tail += cj * (p * kf.ln()).exp() * hurwitz_zeta_complex(p, kf + 1.0)?;
        }
        Ok(tail)
    };
    let best = tail_with(terms)?;
    let err = if terms > 1 { (best - tail_with(terms - 1)?).norm() } else { best.norm() };
    Ok((best, err))
}

fn power(x: f64, s: Complex64, j: usize) -> Complex64 {
    ((1.0 - 2.0 * s - j as f64) * x.ln()).exp()
}
