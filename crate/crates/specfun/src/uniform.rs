//! Olver's uniform large-order expansions of `K_ν` and `K_ν'`.
//!
//! With `r = √(ν² + x²)` and `p = ν/r`,
//!
//! ```text
//! K_ν(x)  ≈  √(π/2r) · e^{−νξ} · Σ_k (−1)^k U_k(p)/ν^k
//! K_ν'(x) ≈ −√(πr/2)/x · e^{−νξ} · Σ_k (−1)^k V_k(p)/ν^k
//! νξ = r + ν·log(x/(ν + r))
//! ```
//!
//! so `x K_ν'/K_ν ≈ −r · ΣV/ΣU`. The log-space helpers run on dual numbers
//! and therefore also return the derivative in the order.

use crate::olver::{table, MAX_TERMS};
use crate::{Dual, ExpansionWithBound, Result, SpecError};
use std::f64::consts::PI;

/// Smallest order accepted by the uniform expansions.
pub const UNIFORM_MIN_ORDER: f64 = 5.0;

/// Calibrated constant `C` in the relative envelope `C/(x² + ν²)` of
/// [`logderiv_uniform`]. The leading omitted term is at most `|1−p²||1−5p²|/8`
/// times `1/r`; 0.25 leaves room for the next one at `ν ≥ 5`.
pub const LOGDERIV_ENVELOPE: f64 = 0.25;

struct Parts {
    r: Dual,
    /// `½ log(π/2r) − νξ`
    log_pref: Dual,
    sum_u: Dual,
    sum_v: Dual,
}

fn parts(nu: Dual, x: f64, n_terms: usize) -> Parts {
    let r = (nu * nu + x * x).sqrt();
    let p = nu / r;
    let nu_xi = r + nu * (Dual::constant(x) / (nu + r)).ln();
    let log_pref = (Dual::constant(PI / 2.0) / r).ln() * 0.5 - nu_xi;
    let mut sum_u = Dual::constant(0.0);
    let mut sum_v = Dual::constant(0.0);
    let mut scale = Dual::constant(1.0);
    for (u, v) in table().iter().take(n_terms) {
        sum_u = sum_u + u.eval_dual(p) * scale;
        sum_v = sum_v + v.eval_dual(p) * scale;
        scale = -(scale / nu);
    }
    Parts { r, log_pref, sum_u, sum_v }
}

fn check(nu: f64, x: f64, n_terms: usize) -> Result<()> {
    if !(nu >= UNIFORM_MIN_ORDER) {
        return Err(SpecError::Validity(format!("order {nu} below {UNIFORM_MIN_ORDER}")));
    }
    if !(x > 0.0) {
        return Err(SpecError::Domain(x));
    }
    if n_terms == 0 || n_terms > MAX_TERMS {
        return Err(SpecError::Parameter(format!("n_terms must be in 1..={MAX_TERMS}")));
    }
    Ok(())
}

/// `log K_ν(x)` and its derivative in `ν`, from `n_terms` terms.
pub fn uniform_log_k(nu: f64, x: f64, n_terms: usize) -> Result<Dual> {
    check(nu, x, n_terms)?;
    let p = parts(Dual::variable(nu), x, n_terms);
    Ok(p.log_pref + p.sum_u.ln())
}

/// `x K_ν'(x)/K_ν(x)` and its derivative in `ν`, from `n_terms` terms.
pub fn uniform_log_derivative(nu: f64, x: f64, n_terms: usize) -> Result<Dual> {
    check(nu, x, n_terms)?;
    let p = parts(Dual::variable(nu), x, n_terms);
    Ok(-(p.r * p.sum_v / p.sum_u))
}

fn olver_factor(nu: f64, p: f64, n_terms: usize, use_v: bool) -> f64 {
    let tbl = olver_polys_ext(n_terms);
    let (u1, _) = &tbl[1];
    let (un, vn) = &tbl[n_terms];
    let tv_n = if use_v { vn.total_variation(p) } else { un.total_variation(p) };
    2.0 * (2.0 * u1.total_variation(p) / nu).exp() * tv_n / nu.powi(n_terms as i32)
}

fn olver_polys_ext(n: usize) -> Vec<(crate::OlverPolynomial, crate::OlverPolynomial)> {
    if n < MAX_TERMS {
        table().to_vec()
    } else {
        crate::olver_polys(n)
    }
}

/// `K_ν(νz)` from `n_terms` terms, with Olver's total-variation bound
/// `2·exp(2𝒱(U₁)/ν)·𝒱(U_n)/νⁿ` (variations over `[0, p]`) on the relative
/// remainder.
pub fn bessel_k_uniform(nu: f64, z: f64, n_terms: usize) -> Result<ExpansionWithBound<f64>> {
    let x = nu * z;
    check(nu, x, n_terms)?;
    let pt = parts(Dual::constant(nu), x, n_terms);
    let pref = pt.log_pref.v.exp();
    let p = nu / pt.r.v;
    Ok(ExpansionWithBound {
        value: pref * pt.sum_u.v,
        remainder_bound: pref * olver_factor(nu, p, n_terms, false),
        order_used: n_terms,
    })
}

/// `K_ν'(νz)` from `n_terms` terms. The bound has the same shape as for
/// `K_ν` with `V_n` in place of `U_n`.
pub fn bessel_kprime_uniform(nu: f64, z: f64, n_terms: usize) -> Result<ExpansionWithBound<f64>> {
    let x = nu * z;
    check(nu, x, n_terms)?;
    let pt = parts(Dual::constant(nu), x, n_terms);
    let r = pt.r.v;
    let pref = (pt.log_pref.v + (r).ln()).exp() / x;
    let p = nu / r;
    Ok(ExpansionWithBound {
        value: -pref * pt.sum_v.v,
        remainder_bound: pref * olver_factor(nu, p, n_terms, true),
        order_used: n_terms,
    })
}

/// `x K_ν'(x)/K_ν(x) ≈ −r − ½x²/r²` with `r = √(x² + ν²)`.
///
/// The relative remainder is enveloped by `C/(x² + ν²)`, so the absolute
/// bound reported is `C/r`.
pub fn logderiv_uniform(nu: f64, x: f64) -> Result<ExpansionWithBound<f64>> {
    check(nu, x, 2)?;
    let r2 = nu * nu + x * x;
    let r = r2.sqrt();
    Ok(ExpansionWithBound { value: -r - 0.5 * x * x / r2, remainder_bound: LOGDERIV_ENVELOPE / r, order_used: 2 })
}
