use num_complex::Complex64;
use proptest::prelude::*;
use quadsum::{gauss_legendre, integrate, integrate_real, ramanujan_sum};
use std::f64::consts::PI;

fn bose_arctan(t: f64) -> f64 {
    if t == 0.0 {
        return 1.0 / PI;
    }
    2.0 * t.atan() / (2.0 * PI * t).exp_m1()
}

#[test]
fn bose_arctan_integral_two_schemes_agree() {
    let de = integrate_real(bose_arctan, 0.0, f64::INFINITY, 1e-14).unwrap().value;
    // the integrand is below 1e-30 past t = 12
    let gl = gauss_legendre(bose_arctan, 0.0, 12.0, 30, 48);
    assert!((de - gl).abs() < 1e-10, "de={de} gl={gl}");
}

#[test]
fn semi_infinite_power() {
    // ∫_1^∞ x^{-5/2} dx = 2/3
    let v = integrate_real(|x| x.powf(-2.5), 1.0, f64::INFINITY, 1e-13).unwrap().value;
    assert!((v - 2.0 / 3.0).abs() < 1e-11);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cubic_on_random_interval(a in -5.0f64..5.0, w in 0.01f64..10.0, c0 in -3.0f64..3.0, c3 in -3.0f64..3.0) {
        let b = a + w;
        let r = integrate_real(|x| c0 + c3 * x * x * x, a, b, 1e-12).unwrap();
        let exact = c0 * (b - a) + c3 * (b.powi(4) - a.powi(4)) / 4.0;
        prop_assert!(r.error_estimate >= 0.0);
        prop_assert!((r.value - exact).abs() <= 1e-9 * (1.0 + exact.abs()));
    }

    #[test]
    fn complex_exponential_half_line(re in 0.2f64..5.0, im in -5.0f64..5.0) {
        // ∫_0^∞ e^{-zu} du = 1/z
        let z = Complex64::new(re, im);
        let r = integrate(|u| (-z * u).exp(), 0.0, f64::INFINITY, 1e-12).unwrap();
        prop_assert!((r.value - 1.0 / z).norm() <= 1e-8 / z.norm().min(1.0));
    }

    #[test]
    fn ramanujan_partition_geometric(c in 0.3f64..4.0) {
        // Σ e^{-ck} = 1/(e^c − 1), ∫_1^∞ e^{-cx} = e^{-c}/c
        let r = ramanujan_sum(|z| (-c * z).exp(), 1e-12).unwrap();
        let expect = 1.0 / c.exp_m1() - (-c).exp() / c;
        prop_assert!(r.hypotheses_satisfied);
        prop_assert!((r.value.re - expect).abs() < 1e-9, "{} vs {}", r.value, expect);
    }
}
