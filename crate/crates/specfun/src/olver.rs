//! Olver's polynomials `U_k` and `V_k` in exact rational arithmetic.
//!
//! `U₀ = 1`, `U_{k+1}(t) = ½t²(1−t²)U_k'(t) + ⅛∫₀^t (1−5s²)U_k(s) ds`, and
//! `V_k = U_k − ½t(1−t²)U_{k−1} − t²(1−t²)U_{k−1}'` with `V₀ = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

/// A polynomial with exact rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct OlverPolynomial {
    pub degree: usize,
    pub coefficients: Vec<BigRational>,
    float: Vec<f64>,
}

impl OlverPolynomial {
    fn from_coeffs(mut c: Vec<BigRational>) -> Self {
        while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        let float = c.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        Self { degree: c.len() - 1, coefficients: c, float }
    }

    /// Floating-point evaluation by Horner's rule.
    pub fn eval(&self, t: f64) -> f64 {
        self.float.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// Evaluation on a dual number (value and derivative).
    pub fn eval_dual(&self, t: crate::Dual) -> crate::Dual {
        self.float.iter().rev().fold(crate::Dual::constant(0.0), |acc, &c| acc * t + c)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, t: &BigRational) -> BigRational {
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// Total variation on `[0, p]`, by dense sampling between the real
    /// critical points (a degree-3k polynomial has at most 3k−1 of them).
    pub fn total_variation(&self, p: f64) -> f64 {
        let n = 400 * (self.degree + 1);
        let mut prev = self.eval(0.0);
        let mut tv = 0.0;
        for i in 1..=n {
            let v = self.eval(p * i as f64 / n as f64);
            tv += (v - prev).abs();
            prev = v;
        }
        tv
    }

    fn derivative(&self) -> Vec<BigRational> {
        if self.coefficients.len() <= 1 {
            return vec![BigRational::zero()];
        }
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect()
    }

    pub fn is_exact_rational(&self) -> bool {
        self.coefficients.iter().all(|c| c.denom().is_positive())
    }
}

fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let z = BigRational::zero();
            a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)
        })
        .collect()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(U_k, V_k)` for `k = 0..=n_max`.
pub fn olver_polys(n_max: usize) -> Vec<(OlverPolynomial, OlverPolynomial)> {
    let one = vec![BigRational::one()];
    let mut us = vec![OlverPolynomial::from_coeffs(one.clone())];
    for k in 0..n_max {
        let u = &us[k];
        // ½t²(1−t²) U'
        let a = mul(&[rat(0, 1), rat(0, 1), rat(1, 2), rat(0, 1), rat(-1, 2)], &u.derivative());
        // ⅛ ∫₀^t (1 − 5s²) U
        let integrand = mul(&[rat(1, 8), rat(0, 1), rat(-5, 8)], &u.coefficients);
        let mut integral = vec![BigRational::zero()];
        for (i, c) in integrand.into_iter().enumerate() {
            integral.push(c / BigRational::from_integer(BigInt::from(i + 1)));
        }
        us.push(OlverPolynomial::from_coeffs(add(&a, &integral)));
    }
    let mut out = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        let v = if k == 0 {
            OlverPolynomial::from_coeffs(one.clone())
        } else {
            let prev = &us[k - 1];
            let t1 = mul(&[rat(0, 1), rat(-1, 2), rat(0, 1), rat(1, 2)], &prev.coefficients);
            let t2 = mul(&[rat(0, 1), rat(0, 1), rat(-1, 1), rat(0, 1), rat(1, 1)], &prev.derivative());
            OlverPolynomial::from_coeffs(add(&add(&us[k].coefficients, &t1), &t2))
        };
        out.push((us[k].clone(), v));
    }
    out
}

/// Shared table used by the uniform expansions.
pub(crate) fn table() -> &'static [(OlverPolynomial, OlverPolynomial)] {
    static T: OnceLock<Vec<(OlverPolynomial, OlverPolynomial)>> = OnceLock::new();
    T.get_or_init(|| olver_polys(MAX_TERMS))
}

pub(crate) const MAX_TERMS: usize = 10;
