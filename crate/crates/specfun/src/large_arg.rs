//! Hankel's large-argument expansion of `K_ν(z)` and `K_ν'(z)`.

use crate::{ComplexOrder, ExpansionWithBound, Result, SpecError};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Multiplier on the first omitted term used as the remainder envelope.
/// For real order the remainder is bounded by the first omitted term once
/// `z` is past the validity threshold; complex orders get a safety factor.
pub const LARGE_ARG_ENVELOPE: f64 = 2.0;

fn threshold(nu: Complex64) -> f64 {
    10.0 * (1.0 + nu.norm_sqr())
}

fn validate(nu: Complex64, z: f64) -> Result<()> {
    if !(z > 0.0) {
        return Err(SpecError::Domain(z));
    }
    if z < threshold(nu) {
        return Err(SpecError::Validity(format!("argument {z} below 10(1+|ν|²) = {}", threshold(nu))));
    }
    Ok(())
}

/// `√(π/2z) e^{−z} [1 + (4ν²−1)/(8z) + (4ν²−1)(4ν²−9)/(128z²)]`.
pub fn bessel_k_large_argument(nu: ComplexOrder, z: f64) -> Result<ExpansionWithBound<Complex64>> {
    let n = nu.as_complex();
    validate(n, z)?;
    let m = 4.0 * n * n;
    let pref = (PI / (2.0 * z)).sqrt() * (-z).exp();
    let t1 = (m - 1.0) / (8.0 * z);
    let t2 = (m - 1.0) * (m - 9.0) / (128.0 * z * z);
    let t3 = (m - 1.0) * (m - 9.0) * (m - 25.0) / (6.0 * 512.0 * z * z * z);
    Ok(ExpansionWithBound {
        value: pref * (1.0 + t1 + t2),
        remainder_bound: LARGE_ARG_ENVELOPE * pref * t3.norm(),
        order_used: 3,
    })
}

/// `−√(π/2z) e^{−z} [1 + (4ν²+3)/(8z) + (4ν²−1)(4ν²+15)/(128z²)]`.
pub fn bessel_kprime_large_argument(nu: ComplexOrder, z: f64) -> Result<ExpansionWithBound<Complex64>> {
    let n = nu.as_complex();
    validate(n, z)?;
    let m = 4.0 * n * n;
    let pref = (PI / (2.0 * z)).sqrt() * (-z).exp();
    let t1 = (m + 3.0) / (8.0 * z);
    let t2 = (m - 1.0) * (m + 15.0) / (128.0 * z * z);
    let t3 = (m - 1.0) * (m - 9.0) * (m + 35.0) / (6.0 * 512.0 * z * z * z);
    Ok(ExpansionWithBound {
        value: -pref * (1.0 + t1 + t2),
        remainder_bound: LARGE_ARG_ENVELOPE * pref * t3.norm(),
        order_used: 3,
    })
}
