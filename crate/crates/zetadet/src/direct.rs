//! The direct route: `Σ (λ_j + μ)^{−s}` over an enumerated spectrum plus a
//! model of the eigenvalues above `λ_max`.
//!
//! The default tail counts the zeros of each mode with the Debye phase
//!
//! ```text
//! S_k(r) = (θ(r, x₊) + θ(r, x₋))/π,   θ(r, x) = r·acosh(r/x) − √(r² − x²)  (r > x)
//! ```
//!
//! whose zeros sit at `S_k(r_j) ≈ j − ½` with a slowly beating offset. Each
//! mode's remaining eigenvalues become `∫ (¼ + r² + μ)^{−s} dS_k`, cut half a
//! zero past its last computed zero. Modes with no computed zeros start at
//! their turning point `x₋`; above the slice they are summed explicitly to
//! `DENSITY_K_MAX` and then by a fitted power-law tail.

use crate::fit::least_squares;
use crate::{check_mu, Result, Route, ZetaError, ZetaEval};
use charfn::ModeChar;
use num_complex::Complex64;
use quadsum::{integrate, Bound};
use specfun::hurwitz_zeta_complex;
use spectrum::{weyl_constant, SpectrumSlice};
use std::f64::consts::PI;

const DENSITY_K_MAX: i64 = 256;
const DENSITY_FIT_TERMS: usize = 5;
const TAIL_TOL: f64 = 1e-11;
// zeros averaged for each mode's phase offset
const OFFSET_WINDOW: usize = 8;
// offset of the virtual first zero for modes with no computed zeros
const DEFAULT_OFFSET: f64 = 0.5;

/// How [`zeta_direct_with`] accounts for eigenvalues above `λ_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectTail {
    /// Per-mode Debye phase counting (default).
    ModeDensity,
    /// `C·λ_max^{1−s}/(s − 1)` with the Weyl constant fitted on
    /// `[λ_max/2, λ_max]`; coarse, and the whole tail counts as uncertain.
    Weyl,
}

/// `ζ(s)` by summation over `slice` with the default tail.
pub fn zeta_direct(s: Complex64, mu: f64, slice: &SpectrumSlice) -> Result<ZetaEval> {
    zeta_direct_with(s, mu, slice, DirectTail::ModeDensity)
}

pub fn zeta_direct_with(s: Complex64, mu: f64, slice: &SpectrumSlice, tail: DirectTail) -> Result<ZetaEval> {
    if s.re <= 1.0 {
        return Err(ZetaError::Divergent(s.re));
    }
    check_mu(mu)?;
    if slice.lambda_max < 50.0 {
        return Err(ZetaError::InsufficientSlice(format!("lambda_max = {} is below 50", slice.lambda_max)));
    }
    let term = |lambda: f64| (-s * (lambda + mu).ln()).exp();
    let mut value = Complex64::new(0.0, 0.0);
    for rec in &slice.records {
        let kernel = rec.k == 0 && rec.j == 0;
        if kernel && mu == 0.0 {
            continue;
        }
        value += term(rec.lambda);
    }
    let (tail_value, estimate) = match tail {
        DirectTail::ModeDensity => density_tail(s, mu, slice)?,
        DirectTail::Weyl => {
            let c = weyl_constant(slice, 0.5 * slice.lambda_max, slice.lambda_max)?;
            let lm = slice.lambda_max + mu;
            let t = c * ((1.0 - s) * lm.ln()).exp() / (s - 1.0);
            (t, t.norm())
        }
    };
    Ok(ZetaEval { s, mu, value: value + tail_value, truncation_estimate: estimate, route: Route::Direct })
}

fn theta(r: f64, x: f64) -> f64 {
    if r <= x {
        0.0
    } else {
        r * (r / x).acosh() - (r * r - x * x).sqrt()
    }
}

fn phase(r: f64, m: &ModeChar) -> f64 {
    (theta(r, m.x_plus) + theta(r, m.x_minus)) / PI
}

fn density(r: f64, m: &ModeChar) -> f64 {
    let a = |x: f64| if r > x { (r / x).acosh() } else { 0.0 };
    (a(m.x_plus) + a(m.x_minus)) / PI
}

/// Smallest `r ≥ x₋` with `S(r) = target`, by bisection on the monotone phase.
fn invert_phase(target: f64, m: &ModeChar) -> f64 {
    let lo0 = m.x_plus.min(m.x_minus);
    if target <= 0.0 {
        return lo0;
    }
    let (mut lo, mut hi) = (lo0, lo0 + 1.0);
    while phase(hi, m) < target {
        hi = lo0 + 2.0 * (hi - lo0);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phase(mid, m) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// `∫_{r_c}^∞ (¼ + r² + μ)^{−s} S'(r) dr`, split at the upper turning point.
fn mode_density_integral(s: Complex64, mu: f64, r_c: f64, m: &ModeChar) -> Result<Complex64> {
    let f = |r: f64| (-s * (0.25 + r * r + mu).ln()).exp() * density(r, m);
    let kink = m.x_plus.max(m.x_minus);
    if kink > r_c {
        let a = integrate(f, r_c, kink, TAIL_TOL)?.value;
        let b = integrate(f, kink, Bound::Infinity, TAIL_TOL)?.value;
        Ok(a + b)
    } else {
        Ok(integrate(f, r_c, Bound::Infinity, TAIL_TOL)?.value)
    }
}

fn density_tail(s: Complex64, mu: f64, slice: &SpectrumSlice) -> Result<(Complex64, f64)> {
    let bundle = &slice.bundle;
    let term = |r: f64| (-s * (0.25 + r * r + mu).ln()).exp();
    let first = if bundle.alpha == 0.0 { 1 } else { 0 };
    let mut tail = Complex64::new(0.0, 0.0);
    let mut estimate = 0.0;
    // spread of first-zero offsets, used for modes with no zeros
    let mut first_offsets = Vec::new();
    for k in first..=slice.k_cutoff_used {
        let m = ModeChar::new(k, bundle)?;
        let zeros: Vec<f64> = slice.records.iter().filter(|r| r.k == k && r.j > 0).map(|r| r.r).collect();
        let mult = if k == 0 { 1.0 } else { 2.0 };
        let (r_c, spread) = if zeros.is_empty() {
            (m.x_minus.min(m.x_plus), f64::NAN)
        } else {
            let offsets: Vec<f64> = zeros.iter().enumerate().map(|(j, &r)| (j + 1) as f64 - phase(r, &m)).collect();
            if k != 0 {
                first_offsets.push(offsets[0]);
            }
            let recent = &offsets[offsets.len().saturating_sub(OFFSET_WINDOW)..];
            let mean = recent.iter().sum::<f64>() / recent.len() as f64;
            let spread = recent.iter().map(|o| (o - mean).abs()).fold(0.0, f64::max);
            let target = zeros.len() as f64 + 0.5 - mean;
            (invert_phase(target, &m), spread)
        };
        tail += mult * mode_density_integral(s, mu, r_c, &m)?;
        if spread.is_finite() {
            estimate += mult * spread * term(r_c).norm();
        } else {
            estimate += mult * first_offset_spread(&first_offsets) * term(r_c).norm();
        }
    }
    if first_offsets.is_empty() {
        return Err(ZetaError::InsufficientSlice("no mode k ≠ 0 has a computed zero".into()));
    }
    let spread0 = first_offset_spread(&first_offsets);
    // modes above the slice
    let mut per_mode = Vec::new();
    for k in slice.k_cutoff_used + 1..=DENSITY_K_MAX {
        let m = ModeChar::new(k, bundle)?;
        let r_c = m.x_minus.min(m.x_plus);
        let v = mode_density_integral(s, mu, r_c, &m)?;
        tail += 2.0 * v;
        estimate += 2.0 * spread0 * term(r_c).norm();
        per_mode.push((k, v));
    }
    let (far, far_err) = fitted_tail(&per_mode, s)?;
    tail += 2.0 * far;
    // the per-mode turning-point error keeps decaying like k^{−2s}
    let k_end = DENSITY_K_MAX as f64;
    let x_unit = 2.0 * PI * bundle.a;
    estimate += 2.0 * far_err
        + 2.0 * spread0 * x_unit.powf(-2.0 * s.re) * hurwitz_zeta_complex(Complex64::new(2.0 * s.re, 0.0), k_end + 1.0)?.re;
    Ok((tail, estimate))
}

fn first_offset_spread(first_offsets: &[f64]) -> f64 {
    first_offsets.iter().map(|o| (o - DEFAULT_OFFSET).abs()).fold(0.0, f64::max)
}

/// `Σ_{k>K} T_k` from a fit `T_k ≈ Σ_j c_j k^{1−2s−j}` over the last half
/// of the modes.
fn fitted_tail(per_mode: &[(i64, Complex64)], s: Complex64) -> Result<(Complex64, f64)> {
    let k_max = per_mode.last().map(|p| p.0).unwrap_or(0);
    let window: Vec<&(i64, Complex64)> = per_mode.iter().filter(|(k, _)| 2 * k >= k_max).collect();
    let kf = k_max as f64;
    let tail_with = |n: usize| -> Result<Complex64> {
        let rows: Vec<Vec<Complex64>> = window
            .iter()
            .map(|(k, _)| (0..n).map(|j| ((1.0 - 2.0 * s - j as f64) * (*k as f64 / kf).ln()).exp()).collect())
            .collect();
        let y: Vec<Complex64> = window.iter().map(|(_, v)| *v).collect();
        let c = least_squares(&rows, &y).ok_or_else(|| ZetaError::Extrapolation("singular density tail fit".into()))?;
        let mut tail = Complex64::new(0.0, 0.0);
        for (j, cj) in c.iter().enumerate() {
            let p = 2.0 * s - 1.0 + j as f64;
            tail += cj * (p * kf.ln()).exp() * hurwitz_zeta_complex(p, kf + 1.0)?;
        }
        Ok(tail)
    };
    let best = tail_with(DENSITY_FIT_TERMS)?;
    Ok((best, (best - tail_with(DENSITY_FIT_TERMS - 1)?).norm()))
}
