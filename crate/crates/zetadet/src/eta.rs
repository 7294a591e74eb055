//! The double series whose large-a limit produces the `log Γ(1 − α)` and
//! `γα` constants of the determinant:
//!
//! ```text
//! E(a) = −Σ_{k≠0} Σ_{n≥2} (1/n)·x_k(a)^n
//! x_k  = 4παa / (√(4π²(k+α)²a² + |k|^{2δ}) + √(4π²(k−α)²a² + |k|^{2δ}))
//! ```
//!
//! Since `x_k → α/|k|`, the limit is `−2 Σ_{n≥2} α^n ζ(n)/n`.

use crate::{Result, ZetaError};
use serde::{Deserialize, Serialize};
use specfun::{hurwitz_zeta, log_gamma, EULER_GAMMA};
use std::f64::consts::PI;

const N_TOL: f64 = 1e-16;
const N_MAX: usize = 100_000;

/// One evaluation of the double series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaSum {
    pub value: f64,
    /// Largest `x_k`; the n-series is geometric with at most this ratio.
    pub max_ratio: f64,
    /// Estimated size of the omitted `k > k_max` modes and n-tails.
    pub truncation_estimate: f64,
}

/// `E(a)` with modes `1 ≤ |k| ≤ k_max` summed explicitly, the n-series
/// summed until its geometric remainder is below `1e−16`, and the k-tail
/// from its large-a form `−Σ_n (α^n/n) ζ(n, k_max + 1)`.
pub fn eta_sum(alpha: f64, a: f64, delta: f64, k_max: u32) -> Result<EtaSum> {
    if !(0.0..1.0).contains(&alpha) || !(a > 0.0) || !(delta > 0.0) || k_max < 1 {
        return Err(ZetaError::Parameter(format!("alpha = {alpha}, a = {a}, delta = {delta}, k_max = {k_max}")));
    }
    if alpha == 0.0 {
        return Ok(EtaSum { value: 0.0, max_ratio: 0.0, truncation_estimate: 0.0 });
    }
    let mut value = 0.0;
    let mut max_ratio: f64 = 0.0;
    let mut n_tail = 0.0;
    for k in 1..=k_max {
        let kf = k as f64;
        let shift = kf.powf(2.0 * delta);
        let root = |c: f64| (4.0 * PI * PI * c * c * a * a + shift).sqrt();
        let x = 4.0 * PI * alpha * a / (root(kf + alpha) + root(kf - alpha));
        max_ratio = max_ratio.max(x);
        let (mut term_sum, mut pow, mut n) = (0.0, x, 1usize);
        loop {
            n += 1;
            pow *= x;
            term_sum += pow / n as f64;
            // remaining terms are below x^{n+1}/((n+1)(1 − x))
            let rest = pow * x / ((n + 1) as f64 * (1.0 - x));
            if rest <= N_TOL * term_sum {
                n_tail += rest;
                break;
            }
            if n >= N_MAX {
                return Err(ZetaError::Extrapolation(format!("n-series at k = {k} not converged")));
            }
        }
        value -= 2.0 * term_sum;
    }
    // large-k form of the remaining modes: x_k ≈ α/k
    let q = k_max as f64 + 1.0;
    let mut k_tail = 0.0;
    let mut n = 2;
    loop {
        let t = alpha.powi(n) / n as f64 * hurwitz_zeta(n as f64, q)?;
        k_tail += t;
        if t <= 1e-17 * k_tail || n > 400 {
            break;
        }
        n += 1;
    }
    value -= 2.0 * k_tail;
    // the large-k form ignores relative corrections of order k^{2δ−2}/(2πa)²
    let correction = (q.powf(2.0 * delta - 2.0) / (4.0 * PI * PI * a * a)).min(1.0);
    Ok(EtaSum { value, max_ratio, truncation_estimate: 2.0 * (k_tail * correction + n_tail) })
}

/// The limit as printed with the generating-function argument:
/// `2 log Γ(1 − α) + 2γα`.
pub fn eta_sum_limit_stated(alpha: f64) -> Result<f64> {
    Ok(2.0 * log_gamma(1.0 - alpha)? + 2.0 * EULER_GAMMA * alpha)
}

/// `−2 Σ_{n≥2} α^n ζ(n)/n = −2 log Γ(1 − α) + 2γα`, obtained by integrating
/// `Σ ζ(n) x^{n−1} = −ψ(1 − x) − γ` from 0 to α.
pub fn eta_sum_limit_corrected(alpha: f64) -> Result<f64> {
    Ok(-2.0 * log_gamma(1.0 - alpha)? + 2.0 * EULER_GAMMA * alpha)
}

/// One entry of [`eta_sum_limit_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaCheck {
    pub a: f64,
    pub sum: EtaSum,
    pub limit_stated: f64,
    /// `E(a) − (2 log Γ(1 − α) + 2γα)`
    pub residual: f64,
    /// `E(a) − (−2 log Γ(1 − α) + 2γα)`
    pub residual_corrected: f64,
}

/// `E(a)` against its stated limit along an increasing `a_list` (μ = 0).
pub fn eta_sum_limit_check(alpha: f64, a_list: &[f64], delta: f64, k_max: u32) -> Result<Vec<EtaCheck>> {
    if a_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ZetaError::Parameter("a_list must be increasing".into()));
    }
    let stated = eta_sum_limit_stated(alpha)?;
    let corrected = eta_sum_limit_corrected(alpha)?;
    a_list
        .iter()
        .map(|&a| {
            let sum = eta_sum(alpha, a, delta, k_max)?;
            Ok(EtaCheck {
                a,
                sum,
                limit_stated: stated,
                residual: sum.value - stated,
                residual_corrected: sum.value - corrected,
            })
        })
        .collect()
}
