//! Ramanujan summation through the Abel-Plana formula.
//!
//! For `f` analytic on `Re z ≥ 1` and of moderate growth,
//!
//! ```text
//! Σ_{k≥1} f(k) = ∫₁^∞ f(x) dx + f(1)/2 + i ∫₀^∞ (f(1+it) − f(1−it)) / (e^{2πt} − 1) dt
//! ```
//!
//! The regularised sum is everything on the right except the first integral,
//! so it stays finite even when `Σ f(k)` or `∫₁^∞ f` diverge.

use crate::{finite, integrate, QuadError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Sign in front of the vertical-line term. Fixed by the `x⁻²` and `e^{−x}`
/// closed forms in the tests below.
pub const ABEL_PLANA_SIGN: f64 = 1.0;

/// Regularised sum `Σ^{(R)}_{k≥1} f(k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RamanujanSum {
    pub value: Complex64,
    /// The vertical-line contribution `i ∫₀^∞ (f(1+it) − f(1−it)) / (e^{2πt} − 1) dt`.
    pub tail_integral: Complex64,
    pub hypotheses_satisfied: bool,
}

/// Diagnostics from [`ramanujan_hypotheses_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesesReport {
    pub satisfied: bool,
    /// Fitted log-log slope of `|f(k)|` over the upper half of the probes.
    pub value_decay_exponent: f64,
    /// Same for the damped vertical-line integral at abscissa `k`.
    pub vertical_decay_exponent: f64,
    /// `(k, |f(k)|, ∫ |f(k+it)| e^{−2π|t|} dt)` for every probe.
    pub probes: Vec<(f64, f64, f64)>,
}

/// Slopes above this are treated as "not decaying".
pub const DECAY_THRESHOLD: f64 = -0.05;

/// Probe `f` at `k = 1, 2, 4, …, probe_k_max` and decide whether `f(k) → 0`
/// and `∫_{−∞}^{∞} |f(k+it)| e^{−2π|t|} dt → 0`.
pub fn ramanujan_hypotheses_check<F>(mut f: F, probe_k_max: u32) -> Result<HypothesesReport>
where
    F: FnMut(Complex64) -> Complex64,
{
    let mut ks = Vec::new();
    let mut k = 1u32;
    while k <= probe_k_max.max(4) {
        ks.push(k as f64);
        k = k.saturating_mul(2);
    }
    let mut probes = Vec::with_capacity(ks.len());
    for &k in &ks {
        let v = f(Complex64::new(k, 0.0));
        if !finite(v) {
            return Err(QuadError::NonFinite { at: k });
        }
        let t_max = cutoff(&mut f, k, 1e-14);
        let vert = integrate(
            |t| {
                let w = (-2.0 * PI * t).exp();
                Complex64::new((f(Complex64::new(k, t)).norm() + f(Complex64::new(k, -t)).norm()) * w, 0.0)
            },
            0.0,
            t_max,
            1e-10,
        )
        .map_err(|e| match e {
            QuadError::NonFinite { .. } => QuadError::NonFinite { at: k },
            other => other,
        })?
        .value
        .re;
        probes.push((k, v.norm(), vert));
    }
    let half = probes.len() / 2;
    let value_slope = loglog_slope(probes[half..].iter().map(|p| (p.0, p.1)));
    let vert_slope = loglog_slope(probes[half..].iter().map(|p| (p.0, p.2)));
    Ok(HypothesesReport {
        satisfied: value_slope <= DECAY_THRESHOLD && vert_slope <= DECAY_THRESHOLD,
        value_decay_exponent: value_slope,
        vertical_decay_exponent: vert_slope,
        probes,
    })
}

// Least-squares slope of log y against log x. Exact zeros count as infinitely
// fast decay.
fn loglog_slope(pts: impl Iterator<Item = (f64, f64)>) -> f64 {
    let pts: Vec<(f64, f64)> = pts.collect();
    if pts.iter().all(|p| p.1 == 0.0) {
        return f64::NEG_INFINITY;
    }
    if pts.iter().any(|p| p.1 == 0.0) {
        return f64::NEG_INFINITY;
    }
    let n = pts.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in &pts {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let den = n * sxx - sx * sx;
    if den == 0.0 {
        return 0.0;
    }
    (n * sxy - sx * sy) / den
}

// Smallest t (doubling from 4) with e^{2πt} beyond 1e18·|f(k ± it)| / scale.
fn cutoff<F: FnMut(Complex64) -> Complex64>(f: &mut F, k: f64, floor: f64) -> f64 {
    let mut t: f64 = 4.0;
    while t < 256.0 {
        let m = f(Complex64::new(k, t)).norm().max(f(Complex64::new(k, -t)).norm());
        if m.is_finite() && (2.0 * PI * t) > (1e18 * m.max(floor)).ln().max(0.0) {
            return t;
        }
        t *= 2.0;
    }
    t
}

/// Ramanujan sum of `f` over `k ≥ 1`.
///
/// The hypotheses are probed up to `k = 64`; the sum is still returned when
/// they fail, with `hypotheses_satisfied = false`, so callers can decide.
pub fn ramanujan_sum<F>(mut f: F, tol: f64) -> Result<RamanujanSum>
where
    F: FnMut(Complex64) -> Complex64,
{
    let hyp = ramanujan_hypotheses_check(&mut f, 64)?;
    let f1 = f(Complex64::new(1.0, 0.0));
    if !finite(f1) {
        return Err(QuadError::NonFinite { at: 1.0 });
    }
    let t_max = cutoff(&mut f, 1.0, tol.min(1e-3));
    let vert = integrate(
        |t| {
            let d = f(Complex64::new(1.0, t)) - f(Complex64::new(1.0, -t));
            d / (2.0 * PI * t).exp_m1()
        },
        0.0,
        t_max,
        tol,
    )?;
    let tail = Complex64::new(0.0, ABEL_PLANA_SIGN) * vert.value;
    Ok(RamanujanSum { value: 0.5 * f1 + tail, tail_integral: tail, hypotheses_satisfied: hyp.satisfied })
}
