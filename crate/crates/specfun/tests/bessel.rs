use num_complex::Complex64;
use proptest::prelude::*;
use quadsum::{gauss_legendre, integrate_real};
use specfun::{
    bessel_k, bessel_k_all, bessel_k_dorder, bessel_k_dx, exp_integral_e1, ComplexOrder, EULER_GAMMA,
};
use std::f64::consts::PI;

const TOL: f64 = 1e-13;

fn k_half(x: f64) -> f64 {
    (PI / (2.0 * x)).sqrt() * (-x).exp()
}

// K₀ from the ascending series: −(log(x/2) + γ) I₀(x) + Σ (x²/4)^k H_k / (k!)²
fn k0_series(x: f64) -> f64 {
    let q = x * x / 4.0;
    let (mut i0, mut s, mut term, mut h) = (1.0, 0.0, 1.0, 0.0);
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * kf);
        h += 1.0 / kf;
        i0 += term;
        s += term * h;
    }
    -((x / 2.0).ln() + EULER_GAMMA) * i0 + s
}

#[test]
fn k0_matches_ascending_series() {
    for x in [0.1, 1.0, 3.0] {
        let k = bessel_k(ComplexOrder::real(0.0), x, TOL).unwrap();
        assert!((k.re / k0_series(x) - 1.0).abs() < 1e-12, "x={x}");
    }
}

#[test]
fn half_order_special_values() {
    for x in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
        let k = bessel_k(ComplexOrder::real(0.5), x, TOL).unwrap().re;
        assert!((k / k_half(x) - 1.0).abs() < 1e-12);
        let d = bessel_k_dorder(ComplexOrder::real(0.5), x, TOL).unwrap().re;
        let exact = (PI / (2.0 * x)).sqrt() * exp_integral_e1(2.0 * x).unwrap() * x.exp();
        assert!((d / exact - 1.0).abs() < 1e-10, "x={x} {d} {exact}");
    }
}

#[test]
fn order_derivative_vanishes_at_zero() {
    let d = bessel_k_dorder(ComplexOrder::real(0.0), 1.7, TOL).unwrap();
    assert_eq!(d.norm(), 0.0);
}

#[test]
fn order_derivative_finite_difference() {
    let h = 1e-4;
    let (nu, x) = (0.7, 2.0);
    let fd = (bessel_k(ComplexOrder::real(nu + h), x, TOL).unwrap() - bessel_k(ComplexOrder::real(nu - h), x, TOL).unwrap())
        / (2.0 * h);
    let d = bessel_k_dorder(ComplexOrder::real(nu), x, TOL).unwrap();
    assert!(((d - fd) / d).norm() < 1e-6);
}

#[test]
fn imaginary_order_argument_derivative_finite_difference() {
    let o = ComplexOrder::new(0.0, 0.3);
    let (x, h) = (3.0, 1e-4);
    let fd = (bessel_k(o, x + h, TOL).unwrap() - bessel_k(o, x - h, TOL).unwrap()) / (2.0 * h);
    let d = bessel_k_dx(o, x, TOL).unwrap();
    assert!(((d - fd) / d).norm() < 1e-7);
}

// Independent oracle: ∫₀^∞ e^{−x cosh u} cos(νu) du on the real line with
// composite Gauss-Legendre. Only usable while e^{−πν/2} is not too small.
fn k_imag_real_line(nu: f64, x: f64) -> f64 {
    let upper = (60.0 / x).acosh() + 1.0;
    gauss_legendre(|u| (-x * u.cosh()).exp() * (nu * u).cos(), 0.0, upper, 40, 200)
}

#[test]
fn imaginary_order_against_real_line_quadrature() {
    for (nu, x) in [(3.0, 2.0), (5.0, 0.5), (1.0, 7.0), (8.0, 4.0)] {
        let k = bessel_k(ComplexOrder::new(0.0, nu), x, TOL).unwrap();
        let oracle = k_imag_real_line(nu, x);
        assert_eq!(k.im, 0.0);
        assert!((k.re - oracle).abs() < 1e-9 * oracle.abs().max(1e-6), "nu={nu} x={x} {k} {oracle}");
    }
}

#[test]
fn recurrence_at_large_imaginary_order() {
    // K_{β+1} − K_{β−1} = (2β/x) K_β
    for (re, im, x) in [(0.4, 25.0, 3.0), (1.0, 60.0, 10.0), (0.0, 120.0, 40.0), (2.5, 8.0, 0.05)] {
        let b = Complex64::new(re, im);
        let kp = bessel_k(ComplexOrder::from(b + 1.0), x, TOL).unwrap();
        let km = bessel_k(ComplexOrder::from(b - 1.0), x, TOL).unwrap();
        let k0 = bessel_k(ComplexOrder::from(b), x, TOL).unwrap();
        let lhs = kp - km;
        let rhs = 2.0 * b / x * k0;
        let scale = kp.norm().max(km.norm()).max(rhs.norm());
        assert!((lhs - rhs).norm() < 1e-10 * scale, "β={b} x={x}: {lhs} vs {rhs}");
    }
}

#[test]
fn bessel_ode_residual() {
    for (re, im, x) in [(0.3, 0.0, 1.5), (0.0, 4.0, 2.0), (0.7, 0.3, 2.0), (12.0, 0.0, 0.7), (0.0, 40.0, 5.0)] {
        let b = Complex64::new(re, im);
        let k = bessel_k_all(ComplexOrder::from(b), x, TOL).unwrap();
        let res = x * x * k.dxx + x * k.dx - (x * x + b * b) * k.k;
        let scale = (x * x * k.dxx).norm() + (x * k.dx).norm() + ((x * x + b * b) * k.k).norm();
        assert!(res.norm() < 1e-11 * scale, "β={b} x={x} residual {}", res.norm() / scale);
    }
}

#[test]
fn huge_real_order_reports_overflow_but_log_scale_is_fine() {
    let b = bessel_k_all(ComplexOrder::real(50.0), 1e-5, 1e-12).unwrap();
    assert!(b.log_scale > 700.0);
    assert!(bessel_k(ComplexOrder::real(50.0), 1e-5, 1e-12).is_err());
}

// Corrected form of the Bessel integral identity: the integral is taken from
// u to ∞, where it converges.
#[test]
fn bessel_square_integral_identity_upper_tail() {
    let nu = Complex64::new(0.7, 0.3);
    let u = 2.0;
    let o = ComplexOrder::spectral(nu);
    let oc = ComplexOrder::spectral(nu.conj());
    let lhs = integrate_real(
        |v| bessel_k(o, v, 1e-14).unwrap().norm_sqr() / v,
        u,
        f64::INFINITY,
        1e-12,
    )
    .unwrap()
    .value;
    let a = bessel_k_all(o, u, 1e-14).unwrap();
    let b = bessel_k_all(oc, u, 1e-14).unwrap();
    let rhs = u / (nu.conj() * nu.conj() - nu * nu) * (a.value() * b.deriv_x() - b.value() * a.deriv_x());
    assert!((rhs.re / lhs - 1.0).abs() < 1e-8 && rhs.im.abs() < 1e-8 * lhs, "{lhs} vs {rhs}");
}

#[test]
fn bessel_square_integral_real_order_upper_tail() {
    let nu = 1.3;
    let u = 3.0;
    let o = ComplexOrder::spectral(Complex64::new(nu, 0.0));
    let lhs = integrate_real(|v| bessel_k(o, v, 1e-14).unwrap().norm_sqr() / v, u, f64::INFINITY, 1e-12)
        .unwrap()
        .value;
    let k = bessel_k_all(o, u, 1e-14).unwrap();
    let bracket = k.value() * k.deriv_order_x() - k.deriv_x() * k.deriv_order();
    let rhs = Complex64::new(0.0, u / (2.0 * nu)) * bracket;
    assert!((rhs.re / lhs - 1.0).abs() < 1e-8, "{lhs} vs {rhs}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn even_in_order(re in -20.0f64..20.0, im in -40.0f64..40.0, x in 0.05f64..30.0) {
        let o = ComplexOrder::new(re, im);
        let a = bessel_k_all(o, x, 1e-12).unwrap();
        let b = bessel_k_all(o.neg(), x, 1e-12).unwrap();
        prop_assert_eq!(a.k, b.k);
        prop_assert_eq!(a.log_scale, b.log_scale);
    }

    #[test]
    fn argument_derivative_is_central_difference(re in 0.0f64..10.0, im in -10.0f64..10.0, x in 0.2f64..20.0) {
        let o = ComplexOrder::new(re, im);
        let tol = 1e-13;
        let h = 1e-5 * x;
        let a = bessel_k_all(o, x, tol).unwrap();
        let kp = bessel_k_all(o, x + h, tol).unwrap();
        let km = bessel_k_all(o, x - h, tol).unwrap();
        // compare in the scale of the centre point
        let fd = (kp.k * (kp.log_scale - a.log_scale).exp() - km.k * (km.log_scale - a.log_scale).exp()) / (2.0 * h);
        let rel = (fd - a.dx).norm() / a.dx.norm().max(a.k.norm());
        prop_assert!(rel < 1e-6, "rel {rel}");
    }

    #[test]
    fn imaginary_order_real_valued(nu in -60.0f64..60.0, x in 0.01f64..50.0) {
        let k = bessel_k(ComplexOrder::new(0.0, nu), x, 1e-12).unwrap();
        prop_assert_eq!(k.im, 0.0);
    }

    #[test]
    fn real_order_derivative_negative(t in 0.0f64..30.0, x in 0.01f64..50.0) {
        let b = bessel_k_all(ComplexOrder::real(t), x, 1e-12).unwrap();
        prop_assert!(b.dx.re < 0.0 && b.k.re > 0.0);
    }
}
