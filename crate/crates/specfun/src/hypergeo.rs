//! Gauss hypergeometric `₂F₁(a, b; c; t)` on `[0, 1)`.
//!
//! Route selection follows conditioning: the power series for `t ≤ ½`, the
//! Euler integral for `t > ½` when `c > b > 0`, and otherwise the `t ↔ 1 − t`
//! connection formula (falling back to the slowly converging series when that
//! formula is degenerate).

use crate::{Result, SpecError};
use statrs::function::gamma::{gamma, ln_gamma};

fn is_nonpos_int(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn rgamma(x: f64) -> f64 {
    if is_nonpos_int(x) {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

fn series(a: f64, b: f64, c: f64, t: f64, max_terms: usize) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..max_terms {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * t;
        sum += term;
        if term == 0.0 || (term.abs() < 1e-17 * sum.abs() && n > 2) {
            return Ok(sum);
        }
    }
    Err(SpecError::Accuracy { requested: 1e-17, achieved: (term / sum).abs() })
}

fn euler_integral(a: f64, b: f64, c: f64, t: f64) -> Result<f64> {
    // ∫₀¹ s^{b−1}(1−s)^{c−b−1}(1−ts)^{−a} ds, split at ½. On each half the
    // endpoint power is absorbed by s = r^{1/b} or 1 − s = r^{1/(c−b)}, which
    // leaves a bounded integrand and keeps 1 − s exact near the right end.
    let e = c - b;
    let left = quadsum::integrate_real(
        |r| {
            let s = r.powf(1.0 / b);
            (1.0 - s).powf(e - 1.0) * (1.0 - t * s).powf(-a)
        },
        0.0,
        0.5f64.powf(b),
        1e-14,
    )?
    .value
        / b;
    let right = quadsum::integrate_real(
        |r| {
            let one_minus = r.powf(1.0 / e);
            let s = 1.0 - one_minus;
            s.powf(b - 1.0) * (1.0 - t + t * one_minus).powf(-a)
        },
        0.0,
        0.5f64.powf(e),
        1e-14,
    )?
    .value
        / e;
    let pre = (ln_gamma(c) - ln_gamma(b) - ln_gamma(e)).exp();
    Ok(pre * (left + right))
}

fn connection(a: f64, b: f64, c: f64, t: f64) -> Result<f64> {
    let u = 1.0 - t;
    let d = c - a - b;
    let first = gamma(c) * gamma(d) * rgamma(c - a) * rgamma(c - b) * series(a, b, 1.0 - d, u, 20_000)?;
    let second = u.powf(d) * gamma(c) * gamma(-d) * rgamma(a) * rgamma(b) * series(c - a, c - b, 1.0 + d, u, 20_000)?;
    Ok(first + second)
}

/// `₂F₁(a, b; c; t)` for `t ∈ [0, 1)`.
pub fn hyp2f1(a: f64, b: f64, c: f64, t: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&t) {
        return Err(SpecError::Domain(t));
    }
    if is_nonpos_int(c) {
        return Err(SpecError::Parameter(format!("c = {c} is a nonpositive integer")));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    if t <= 0.5 {
        return series(a, b, c, t, 10_000);
    }
    if c > b && b > 0.0 {
        return euler_integral(a, b, c, t);
    }
    if c > a && a > 0.0 {
        return euler_integral(b, a, c, t);
    }
    let d = c - a - b;
    if d != d.round() {
        return connection(a, b, c, t);
    }
    series(a, b, c, t, 1_000_000)
}

/// The two pieces of `F(n, 1; c; t)` after reflection to `1 − t`:
///
/// ```text
/// F(n, 1; c; t) = (c−1)/(c−n−1) · F(n, 1; n+2−c; 1−t)
///               + Γ(c)Γ(n+1−c)/Γ(n) · (1−t)^{c−n−1} t^{1−c}
/// ```
///
/// returned as `(regular, singular)`.
pub fn hyp2f1_reflect_parts(n: u32, c: f64, t: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(SpecError::Parameter("n must be positive".into()));
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(SpecError::Domain(t));
    }
    let nf = n as f64;
    if is_nonpos_int(c - nf - 1.0) || is_nonpos_int(c) || is_nonpos_int(nf + 2.0 - c) {
        return Err(SpecError::Parameter(format!("c = {c} is outside the reflection range for n = {n}")));
    }
    let regular = (c - 1.0) / (c - nf - 1.0) * hyp2f1_any(nf, 1.0, nf + 2.0 - c, 1.0 - t)?;
    let singular = gamma(c) * gamma(nf + 1.0 - c) / gamma(nf) * (1.0 - t).powf(c - nf - 1.0) * t.powf(1.0 - c);
    Ok((regular, singular))
}

/// `F(n, 1; c; t)` through the reflection identity.
pub fn hyp2f1_reflect(n: u32, c: f64, t: f64) -> Result<f64> {
    let (r, s) = hyp2f1_reflect_parts(n, c, t)?;
    Ok(r + s)
}

// series on the reflected side, where c may be negative
fn hyp2f1_any(a: f64, b: f64, c: f64, t: f64) -> Result<f64> {
    if t <= 0.5 || c <= 0.0 {
        return series(a, b, c, t, 1_000_000);
    }
    hyp2f1(a, b, c, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn at_zero() {
        assert_eq!(hyp2f1(2.0, 3.0, 4.5, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn log_closed_form() {
        for t in [0.3, 0.5, 0.8, 0.95] {
            let v = hyp2f1(1.0, 1.0, 2.0, t).unwrap();
            let exact = -(1.0 - t).ln() / t;
            assert!((v / exact - 1.0).abs() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(hyp2f1(1.0, 1.0, 2.0, 1.0).is_err());
        assert!(hyp2f1(1.0, 1.0, 2.0, -0.1).is_err());
        assert!(hyp2f1(1.0, 1.0, -2.0, 0.3).is_err());
    }
}
