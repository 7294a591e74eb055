use charfn::*;
use num_complex::Complex64;
use proptest::prelude::*;
use specfun::{bessel_k_all, ComplexOrder, LOGDERIV_ENVELOPE};
use std::f64::consts::PI;

fn bundle() -> CuspBundle {
    CuspBundle::new(0.3, 1.0).unwrap()
}

fn spectral(nu: f64) -> ComplexOrder {
    ComplexOrder::new(0.0, nu)
}

/// First sign change of `g_1` along the real spectral axis, refined by
/// bisection; jumps across poles are skipped.
fn first_zero_of_g(k: i64, b: &CuspBundle) -> f64 {
    let m = ModeChar::new(k, b).unwrap();
    let g = |nu: f64| char_g(spectral(nu), m.x_plus, m.x_minus, b).map(|v| v.re);
    let mut nu = 0.05;
    let mut prev = g(nu).ok();
    loop {
        let next = nu + 0.01;
        let cur = g(next).ok();
        if let (Some(p), Some(c)) = (prev, cur) {
            if p * c < 0.0 && (c - p).abs() < 1.0 {
                let (mut lo, mut hi) = (nu, next);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if g(mid).unwrap() * p > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return 0.5 * (lo + hi);
            }
        }
        prev = cur;
        nu = next;
        assert!(nu < 40.0, "no zero found");
    }
}

#[test]
fn large_real_order_matches_leading_terms() {
    let b = bundle();
    let (t, x, y) = (40.0, 10.0, 10.0);
    let g = char_g(ComplexOrder::real(t), x, y, &b).unwrap().re;
    let (rx, ry) = (f64::hypot(x, t), f64::hypot(y, t));
    let s = rx + ry;
    let approx = -s * (1.0 - 4.0 * PI * 0.3 / s - 0.5 / s * (t * t / (rx * rx) + t * t / (ry * ry)));
    // each log-derivative carries an absolute remainder below C/r
    let envelope = LOGDERIV_ENVELOPE * (1.0 / rx + 1.0 / ry);
    assert!((g - approx).abs() <= envelope, "{g} {approx} {envelope}");
}

#[test]
fn upper_integral_derivative_matches_difference_at_zero() {
    let b = bundle();
    let nu = first_zero_of_g(1, &b);
    let m = ModeChar::new(1, &b).unwrap();
    let h = 1e-5;
    let fd = (char_g(spectral(nu + h), m.x_plus, m.x_minus, &b).unwrap().re
        - char_g(spectral(nu - h), m.x_plus, m.x_minus, &b).unwrap().re)
        / (2.0 * h);
    let d = g_derivative_upper_integral(1, nu, &b).unwrap();
    assert!((d - fd).abs() <= 1e-6 * fd.abs(), "{d} {fd}");
    let moments = (Complex64::i() * g_derivative(1, spectral(nu), &b).unwrap()).re;
    assert!((moments - fd).abs() <= 1e-6 * fd.abs());
}

/// The derivative formula with the integrals taken from the origin. The
/// integrand behaves like `|Γ(iν)|²/(2v)·(1 + cos(2ν log v + φ))` at 0, so the
/// integral has no finite value and the formula cannot reproduce the
/// derivative.
#[test]
fn lower_integral_derivative_matches_difference_at_zero() {
    let b = bundle();
    let nu = first_zero_of_g(1, &b);
    let m = ModeChar::new(1, &b).unwrap();
    let h = 1e-5;
    let fd = (char_g(spectral(nu + h), m.x_plus, m.x_minus, &b).unwrap().re
        - char_g(spectral(nu - h), m.x_plus, m.x_minus, &b).unwrap().re)
        / (2.0 * h);
    let d = g_derivative_lower_integral(1, nu, &b);
    assert!(matches!(d, Ok(v) if (v - fd).abs() <= 1e-6 * fd.abs()), "{d:?} vs {fd}");
}

#[test]
fn expanded_form_equals_factored_form() {
    let b = bundle();
    let o = spectral(3.0);
    let f = char_f(o, 5.0, 7.0, &b).unwrap();
    let kx = bessel_k_all(o, 5.0, 1e-13).unwrap().value();
    let ky = bessel_k_all(o, 7.0, 1e-13).unwrap().value();
    let prod = kx * ky * char_g(o, 5.0, 7.0, &b).unwrap();
    assert!((f - prod).norm() <= 1e-10 * f.norm(), "{f} {prod}");
}

fn kernel_residual(alpha: f64, a: f64) -> f64 {
    let b = CuspBundle::new(alpha, a).unwrap();
    // ν = i/2 is Bessel order −½
    let o = ComplexOrder::spectral(Complex64::new(0.0, 0.5));
    let x = 2.0 * PI * alpha * a;
    let k = bessel_k_all(o, x, 1e-13).unwrap();
    let scale = (b.boundary_constant() * k.value() * k.value()).norm() + (2.0 * x * k.deriv_x() * k.value()).norm();
    char_f0(o, &b).unwrap().norm() / scale
}

#[test]
fn mode0_vanishes_at_kernel_point() {
    assert!(kernel_residual(0.3, 1.0) <= 1e-8);
    assert!(kernel_residual(0.9, 3.0) <= 1e-8);
}

#[test]
fn mode0_zero_free_on_imaginary_segment() {
    let b = bundle();
    let mut sign = 0.0;
    for i in 0..=500 {
        let t = 0.2 + 0.25 * i as f64 / 500.0;
        // ν = −it is Bessel order t
        let v = char_f0(ComplexOrder::real(t), &b).unwrap().re;
        assert!(v != 0.0);
        if sign == 0.0 {
            sign = v.signum();
        }
        assert_eq!(v.signum(), sign, "sign change at t = {t}");
    }
}

#[test]
fn mode0_requires_nontrivial_bundle() {
    let b = CuspBundle::new(0.0, 1.0).unwrap();
    assert!(matches!(char_f0(spectral(1.0), &b), Err(CharError::TrivialMode)));
    assert!(char_det_direct(0, spectral(1.0), &b).is_err());
}

#[test]
fn determinant_matches_factored_product() {
    let b = bundle();
    let o = spectral(2.5);
    let m = ModeChar::new(1, &b).unwrap();
    let d = char_det_direct(1, o, &b).unwrap();
    let kp = bessel_k_all(o, m.x_plus, 1e-13).unwrap().value();
    let km = bessel_k_all(o, m.x_minus, 1e-13).unwrap().value();
    let prod = kp * km * char_g(o, m.x_plus, m.x_minus, &b).unwrap();
    assert!((d - prod).norm() <= 1e-10 * d.norm(), "{d} {prod}");
    assert_eq!(d, char_f(o, m.x_plus, m.x_minus, &b).unwrap());
}

#[test]
fn kernel_identity_and_zero_free_neighbours() {
    for &x in &[0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
        let k = bessel_k_all(ComplexOrder::real(0.5), x, 1e-13).unwrap();
        let r = (1.0 + 2.0 * x) * k.k.re + 2.0 * x * k.dx.re;
        assert!(r.abs() <= 1e-10 * (1.0 + 2.0 * x) * k.k.re, "{x}: {r}");
    }
    for &t in &[0.2, 0.8] {
        let s0 = kernel_boundary_function(t, 0.1).unwrap().signum();
        for i in 0..=400 {
            let x = 0.1 * (500.0f64).powf(i as f64 / 400.0);
            let v = kernel_boundary_function(t, x).unwrap();
            assert_eq!(v.signum(), s0, "t = {t}, x = {x}");
        }
    }
}

#[test]
fn determinant_changes_sign_between_dirichlet_zeros() {
    let b = bundle();
    assert!(b.localization_guaranteed());
    let m = ModeChar::new(1, &b).unwrap();
    let k_at = |nu: f64| bessel_k_all(spectral(nu), m.x_plus, 1e-13).unwrap().k.re;
    let mut zeros = vec![];
    let mut nu = 0.5;
    let mut prev = k_at(nu);
    while nu < 30.0 {
        let next = nu + 0.02;
        let cur = k_at(next);
        if prev * cur < 0.0 {
            zeros.push(0.5 * (nu + next));
        }
        prev = cur;
        nu = next;
    }
    assert!(zeros.len() >= 3);
    for w in zeros.windows(2) {
        let n = 200;
        let vals: Vec<f64> = (1..n)
            .map(|i| {
                let nu = w[0] + (w[1] - w[0]) * i as f64 / n as f64;
                let d = char_det_scaled(1, spectral(nu), &b, false).unwrap();
                d.value.re
            })
            .collect();
        let changes = vals.windows(2).filter(|p| p[0] * p[1] < 0.0).count();
        assert!(changes >= 1, "no sign change between {} and {}", w[0], w[1]);
    }
}

#[test]
fn regulariser_anchor_and_primitive() {
    let b = bundle();
    let mu = 1.0;
    let tau0 = (0.25f64 + mu).sqrt();
    assert_eq!(H_reg(1, tau0, mu, &b).unwrap(), Complex64::new(0.0, 0.0));
    let end = 2.0 * tau0;
    let int = quadsum::integrate_real(|t| h_reg(1, t, mu, &b).unwrap().re, tau0, end, 1e-10).unwrap();
    let h = H_reg(1, end, mu, &b).unwrap().re;
    assert!((int.value - h).abs() <= 1e-9 * h.abs().max(1e-12), "{} {h}", int.value);
}

#[test]
fn htilde_decays_with_mode() {
    let b = bundle();
    let mu = 1.0;
    let tau0 = (0.25f64 + mu).sqrt();
    let mut pts = vec![];
    for &k in &[2i64, 4, 8] {
        let end = 2.0 * (k as f64).powf(DEFAULT_DELTA) * tau0;
        let sup = (0..=40)
            .map(|i| htilde(k, tau0 + (end - tau0) * i as f64 / 40.0, mu, &b).unwrap().abs())
            .fold(0.0, f64::max);
        pts.push(((k as f64).ln(), sup.ln()));
    }
    let slope = (pts[2].1 - pts[0].1) / (pts[2].0 - pts[0].0);
    assert!(slope <= -3.0 + 6.0 * DEFAULT_DELTA, "slope {slope}");
}

#[test]
fn split_point_of_sample() {
    let b = bundle();
    let s = regularizer_sample(8, 3.0, 1.0, &b, None).unwrap();
    assert!((s.split_point - 2.0 * 8f64.powf(0.15) * 1.25f64.sqrt()).abs() < 1e-14);
    assert!(regularizer_sample(0, 3.0, 1.0, &b, Some(0.125)).is_err());
}

#[test]
fn log_g_expansion_within_envelope_mode0() {
    let b = bundle();
    let t = 50.0;
    let e = log_abs_g_asymptotic(0, t, &b).unwrap();
    let direct = RealOrderMode::new(0, t, &b).unwrap().log_abs_g();
    assert!((direct - e.value).abs() <= e.remainder_bound, "{} {}", direct - e.value, e.remainder_bound);
}

fn remainder_slope(k: i64, ts: &[f64]) -> f64 {
    let b = bundle();
    let pts: Vec<(f64, f64)> = ts
        .iter()
        .map(|&t| {
            let r = RealOrderMode::new(k, t, &b).unwrap().log_abs_g() - log_abs_g_expansion(k, t, &b).unwrap();
            (t.ln(), r.abs().ln())
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>()
}

#[test]
fn log_g_remainder_slope_mode3_short_range() {
    let s = remainder_slope(3, &[50.0, 100.0, 200.0]);
    assert!((s + 2.0).abs() <= 0.1, "slope {s}");
}

#[test]
fn log_g_remainder_slope_long_range() {
    for k in [0, 3] {
        let s = remainder_slope(k, &[50.0, 100.0, 200.0, 400.0]);
        assert!((s + 2.0).abs() <= 0.1, "k = {k}: slope {s}");
    }
}

#[test]
fn large_argument_expansion() {
    let b = CuspBundle::new(0.0, 50.0).unwrap();
    let o = spectral(0.5);
    let m = ModeChar::new(1, &b).unwrap();
    let e = g_large_argument(1, o, &b).unwrap();
    let g = char_g(o, m.x_plus, m.x_minus, &b).unwrap();
    assert!((e.value - g).norm() <= e.remainder_bound);
    assert!((e.value.re + 4.0 * PI * 50.0).abs() < 0.01);

    let b = CuspBundle::new(0.3, 100.0).unwrap();
    let o = spectral(0.8);
    assert_eq!(g_large_argument(2, o, &b).unwrap().value, g_large_argument(-2, o, &b).unwrap().value);
    let m = ModeChar::new(2, &b).unwrap();
    let g = char_g(o, m.x_plus, m.x_minus, &b).unwrap();
    let e = g_large_argument(2, o, &b).unwrap();
    assert!((e.value - g).norm() <= 1e-3 * g.norm());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn determinant_real_and_symmetric(nu in 0.1f64..15.0, k in 1i64..6, alpha in 0.0f64..0.95, a in 0.3f64..3.0) {
        let b = CuspBundle::new(alpha, a).unwrap();
        let p = char_det_direct(k, spectral(nu), &b).unwrap();
        let q = char_det_direct(-k, spectral(nu), &b).unwrap();
        prop_assert_eq!(p, q);
        prop_assert!(p.im.abs() <= 1e-12 * p.norm());
    }

    #[test]
    fn h_is_odd(t in 0.05f64..30.0, k in 1i64..5, mu in 0.0f64..5.0) {
        let b = bundle();
        let p = h_reg(k, t, mu, &b).unwrap();
        let q = h_reg(k, -t, mu, &b).unwrap();
        prop_assert!((p + q).norm() <= 1e-12 * p.norm().max(1e-300));
    }

    #[test]
    fn g_real_for_real_spectral(nu in 0.1f64..10.0, x in 0.5f64..20.0, y in 0.5f64..20.0) {
        let b = bundle();
        if let Ok(g) = char_g(spectral(nu), x, y, &b) {
            prop_assert!(g.im.abs() <= 1e-12 * g.norm());
        }
    }
}
