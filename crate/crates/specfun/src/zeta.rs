//! Riemann and Hurwitz zeta by Euler-Maclaurin summation.
//!
//! `ζ(s, q) = Σ_{n<N} (n+q)^{−s} + (N+q)^{1−s}/(s−1) + ½(N+q)^{−s}
//!            + Σ_j B_{2j}/(2j)! · s(s+1)⋯(s+2j−2) · (N+q)^{−s−2j+1}`
//!
//! is valid for every `s ≠ 1`, so the same code gives the continuation to
//! `Re s < 1`. The s-derivative is carried along term by term.

use crate::{Result, SpecError};
use num_complex::Complex64;

// B_{2j} / (2j)! for j = 1..15
const BERNOULLI_OVER_FACT: [f64; 15] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.204484017332394e23,
    8553103.0 / 6.0 / 4.0329146112660565e26,
    -23749461029.0 / 870.0 / 3.0488834461171387e29,
    8615841276005.0 / 14322.0 / 2.6525285981219107e32,
];

/// `(ζ(s, q), ∂_s ζ(s, q))` for complex `s ≠ 1` and `q > 0`.
pub fn hurwitz_zeta_ds(s: Complex64, q: f64) -> Result<(Complex64, Complex64)> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(SpecError::Domain(q));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(SpecError::Pole(1.0));
    }
    let one = Complex64::new(1.0, 0.0);
    let n_sum = (15.0 + 2.0 * s.norm() - q).max(0.0).ceil() as usize;
    let mut z = Complex64::new(0.0, 0.0);
    let mut dz = Complex64::new(0.0, 0.0);
    for n in 0..n_sum {
        let l = (n as f64 + q).ln();
        let t = (-s * l).exp();
        z += t;
        dz -= l * t;
    }
    let big = n_sum as f64 + q;
    let l = big.ln();
    let pw = (-s * l).exp(); // big^{−s}
    let sm1 = s - one;
    let tail = pw * big / sm1;
    z += tail + 0.5 * pw;
    dz += -l * tail - pw * big / (sm1 * sm1) - 0.5 * l * pw;
    // rising factorial P = s(s+1)…(s+2j−2) with derivative P'
    let mut p = s;
    let mut dp = one;
    let mut pw_j = pw / big; // big^{−s−1}
    for (j, &b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        let term = b * p * pw_j;
        z += term;
        dz += b * (dp * pw_j - l * p * pw_j);
        if term.norm() < 1e-18 * z.norm() && j > 2 {
            break;
        }
        // advance to s(s+1)…(s+2j)
        for k in [2 * j + 1, 2 * j + 2] {
            let f = s + k as f64;
            dp = dp * f + p;
            p *= f;
        }
        pw_j /= big * big;
    }
    Ok((z, dz))
}

/// `ζ(s, q)` for complex `s ≠ 1`.
pub fn hurwitz_zeta_complex(s: Complex64, q: f64) -> Result<Complex64> {
    Ok(hurwitz_zeta_ds(s, q)?.0)
}

/// `ζ(s, q)` for real `s ≠ 1`, `q > 0`.
pub fn hurwitz_zeta(s: f64, q: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(SpecError::Pole(1.0));
    }
    Ok(hurwitz_zeta_ds(Complex64::new(s, 0.0), q)?.0.re)
}

/// `ζ(s)` for real `s ≠ 1`.
pub fn zeta_riemann(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        assert_eq!(zeta_riemann(0.0).unwrap(), -0.5);
        let pi = std::f64::consts::PI;
        assert!((zeta_riemann(4.0).unwrap() - pi.powi(4) / 90.0).abs() < 1e-15);
        // ζ(−1) = −1/12
        assert!((zeta_riemann(-1.0).unwrap() + 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn hurwitz_at_zero() {
        for q in [0.3, 1.0, 2.7] {
            let (z, dz) = hurwitz_zeta_ds(Complex64::new(0.0, 0.0), q).unwrap();
            assert!((z.re - (0.5 - q)).abs() < 1e-14);
            let expect = statrs::function::gamma::ln_gamma(q) - 0.5 * (2.0 * std::f64::consts::PI).ln();
            assert!((dz.re - expect).abs() < 1e-13, "q={q} {dz} {expect}");
        }
    }

    #[test]
    fn pole() {
        assert!(matches!(zeta_riemann(1.0), Err(SpecError::Pole(_))));
    }
}
