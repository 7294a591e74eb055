//! Mode 0 with its kernel zero at `t = ½` divided out.
//!
//! With `x = 2παa` and `c = 1 + 2x`, `G₀(t) = P(t)/K_t(x)` where
//!
//! ```text
//! P(t) = ½ ∫ e^{−x cosh u + tu} (c − 2x cosh u) du,    P(½) = 0.
//! ```
//!
//! Writing `t = ½ + ε`, the quotient `Q = P/(t − ½)` is the same integral
//! with `e^{tu}` replaced by `e^{u/2} · u · (e^{εu} − 1)/(εu)`, which has no
//! cancellation at `ε = 0`. The reduced function `F̃₀ = F₀/(t² − ¼)` then
//! equals `K_t · Q/(t + ½)`.

use crate::functions::BESSEL_TOL;
use crate::{CharError, CuspBundle, Result};
use num_complex::Complex64;
use specfun::{line_integral, BesselConfig};
use std::f64::consts::PI;

/// Half-width around `t = ½` in which the divided form is used.
pub const STABLE_RADIUS: f64 = 0.25;

/// `(e^z − 1)/z`
fn phi1(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for n in 1..24 {
            term = term * z / (n as f64 + 1.0);
            sum += term;
        }
        sum
    } else {
        z.exp_m1_c() / z
    }
}

/// `(z e^z − e^z + 1)/z²`, the kernel of `∂_ε Q`
fn phi2(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        // Σ z^n (n+1)/(n+2)!
        let mut fact = 2.0;
        let mut pow = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for n in 0..24 {
            sum += pow * ((n as f64 + 1.0) / fact);
            pow *= z;
            fact *= n as f64 + 3.0;
        }
        sum
    } else {
        (z * z.exp() - z.exp_m1_c()) / (z * z)
    }
}

trait ExpM1 {
    fn exp_m1_c(self) -> Self;
}

impl ExpM1 for Complex64 {
    fn exp_m1_c(self) -> Self {
        // e^{a+ib} − 1 = (e^a − 1)cos b + (cos b − 1) + i e^a sin b
        let (s, c) = self.im.sin_cos();
        let em1 = self.re.exp_m1();
        let cm1 = -2.0 * (0.5 * self.im).sin().powi(2);
        Complex64::new(em1 * c + cm1, (em1 + 1.0) * s)
    }
}

/// Mode-0 data near the kernel zero, all ratios free of scale factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode0Reduced {
    pub t: f64,
    /// `log K_t(x)`
    pub log_k: f64,
    /// `∂_t log K_t(x)`
    pub dlog_k: f64,
    /// `Q(t)/K_t(x) = G₀(t)/(t − ½)`
    pub q_ratio: f64,
    /// `Q'(t)/K_t(x)`
    pub dq_ratio: f64,
}

impl Mode0Reduced {
    /// Valid for `|t − ½| ≤ 0.5`; requires `α ≠ 0`.
    pub fn new(t: f64, bundle: &CuspBundle) -> Result<Self> {
        if bundle.alpha == 0.0 {
            return Err(CharError::TrivialMode);
        }
        let eps = t - 0.5;
        if eps.abs() > 0.5 {
            return Err(CharError::Validity(format!("t = {t} too far from ½ for the divided form")));
        }
        let x = 2.0 * PI * bundle.alpha * bundle.a;
        let c = 1.0 + 2.0 * x;
        let r = line_integral::<4, _>(
            Complex64::new(0.5, 0.0),
            x,
            BESSEL_TOL,
            1.0 + eps.abs(),
            &BesselConfig::default(),
            |u| {
                let z = u * eps;
                let e = z.exp();
                let w = c - 2.0 * x * u.cosh();
                [e, u * e, w * u * phi1(z), w * u * u * phi2(z)]
            },
        )?;
        let [k, dk, q, dq] = r.value;
        Ok(Self {
            t,
            log_k: r.log_scale + k.re.ln(),
            dlog_k: dk.re / k.re,
            q_ratio: q.re / k.re,
            dq_ratio: dq.re / k.re,
        })
    }

    /// `G₀(t)`
    pub fn g(&self) -> f64 {
        (self.t - 0.5) * self.q_ratio
    }

    /// `G₀'(t)`
    pub fn dg(&self) -> f64 {
        self.q_ratio + (self.t - 0.5) * (self.dq_ratio - self.q_ratio * self.dlog_k)
    }

    /// `log|F̃₀(t)|` with `F̃₀ = F₀/(t² − ¼)`.
    pub fn log_abs_reduced(&self) -> f64 {
        2.0 * self.log_k + self.q_ratio.abs().ln() - (self.t + 0.5).ln()
    }

    /// `∂_t log|F̃₀(t)|`
    pub fn dlog_reduced(&self) -> f64 {
        self.dlog_k + self.dq_ratio / self.q_ratio - 1.0 / (self.t + 0.5)
    }
}
