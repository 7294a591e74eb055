use crate::mode0::Mode0Reduced;
use crate::{CharError, CuspBundle, ModeChar, Result};
use num_complex::Complex64;
use quadsum::integrate_real;
use specfun::{bessel_k_all, uniform_log_derivative, uniform_log_k, BesselK, ComplexOrder, SpecError};
use std::f64::consts::PI;

/// Bessel accuracy used throughout.
pub(crate) const BESSEL_TOL: f64 = 1e-13;
/// Scaled `|K|` below which an evaluation is treated as sitting on a pole of `g`.
const POLE_THRESHOLD: f64 = 1e-12;
/// Real orders above this use the uniform expansion instead of quadrature.
pub const UNIFORM_SWITCH: f64 = 40.0;
const UNIFORM_TERMS: usize = 8;

fn pole_check(b: &BesselK) -> Result<()> {
    let m = b.k.norm();
    if m < POLE_THRESHOLD {
        return Err(CharError::PoleProximity(m));
    }
    Ok(())
}

/// `g(β, x, y) = 1 + 4παa + x K_β'(x)/K_β(x) + y K_β'(y)/K_β(y)` for Bessel
/// order `β`; use [`ComplexOrder::spectral`] for the spectral parameter.
pub fn char_g(order: ComplexOrder, x: f64, y: f64, bundle: &CuspBundle) -> Result<Complex64> {
    // a fixed summation order keeps the symmetry in (x, y) exact
    let (x, y) = (x.min(y), x.max(y));
    let bx = bessel_k_all(order, x, BESSEL_TOL)?;
    let by = bessel_k_all(order, y, BESSEL_TOL)?;
    pole_check(&bx)?;
    pole_check(&by)?;
    Ok(bundle.boundary_constant() + x * bx.log_deriv_x() + y * by.log_deriv_x())
}

/// `K_β(x)K_β(y)·g(β, x, y)` in expanded form, so Bessel zeros cause no
/// `0·∞` cancellation.
pub fn char_f(order: ComplexOrder, x: f64, y: f64, bundle: &CuspBundle) -> Result<Complex64> {
    let d = det_scaled(order, x, y, bundle, false)?;
    d.unscaled()
}

/// `(1 + 4παa)K_β(x)² + 2x K_β'(x)K_β(x)` at `x = 2παa`: the mode-0 function.
pub fn char_f0(order: ComplexOrder, bundle: &CuspBundle) -> Result<Complex64> {
    if bundle.alpha == 0.0 {
        return Err(CharError::TrivialMode);
    }
    let x = 2.0 * PI * bundle.alpha * bundle.a;
    char_f(order, x, x, bundle)
}

/// `(1 + 2x)K_t(x) + 2x K_t'(x)` at real order `t`: the mode-0 boundary
/// function with `x = 2παa` kept free. It vanishes identically at `t = ½`.
pub fn kernel_boundary_function(t: f64, x: f64) -> Result<f64> {
    let b = bessel_k_all(ComplexOrder::real(t), x, BESSEL_TOL)?;
    let v = (1.0 + 2.0 * x) * b.k.re + 2.0 * x * b.dx.re;
    let lm = b.log_scale + v.abs().ln();
    if lm > 709.0 {
        return Err(SpecError::Overflow(lm).into());
    }
    Ok(v * b.log_scale.exp())
}

/// The mode-`k` determinant at Bessel order `β`.
pub fn char_det_direct(k: i64, order: ComplexOrder, bundle: &CuspBundle) -> Result<Complex64> {
    char_det_scaled(k, order, bundle, false)?.unscaled()
}

/// A determinant value `value·e^{log_scale}` with its derivative in the order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledDet {
    pub log_scale: f64,
    pub value: Complex64,
    /// `∂_β` of the determinant, same scale. Zero unless requested.
    pub d_order: Complex64,
    /// Sum of the moduli of the three terms, same scale: the size against
    /// which a small value counts as a zero.
    pub magnitude: f64,
}

impl ScaledDet {
    pub fn unscaled(&self) -> Result<Complex64> {
        if self.value == Complex64::new(0.0, 0.0) {
            return Ok(self.value);
        }
        let lm = self.log_scale + self.value.norm().ln();
        if lm > 709.0 {
            return Err(SpecError::Overflow(lm).into());
        }
        Ok(self.value * self.log_scale.exp())
    }
}

/// Scaled mode-`k` determinant, optionally with its order derivative.
pub fn char_det_scaled(k: i64, order: ComplexOrder, bundle: &CuspBundle, with_derivative: bool) -> Result<ScaledDet> {
    let m = ModeChar::new(k, bundle)?;
    det_scaled(order, m.x_plus, m.x_minus, bundle, with_derivative)
}

fn det_scaled(order: ComplexOrder, x: f64, y: f64, bundle: &CuspBundle, with_derivative: bool) -> Result<ScaledDet> {
    let (x, y) = (x.min(y), x.max(y));
    let bx = bessel_k_all(order, x, BESSEL_TOL)?;
    let by = if y == x { bx } else { bessel_k_all(order, y, BESSEL_TOL)? };
    let c = bundle.boundary_constant();
    let terms = [c * bx.k * by.k, x * bx.dx * by.k, y * by.dx * bx.k];
    let mut value = terms[0] + terms[1] + terms[2];
    let magnitude = terms.iter().map(|z| z.norm()).sum();
    let mut d_order = Complex64::new(0.0, 0.0);
    if with_derivative {
        d_order = c * (bx.dorder * by.k + bx.k * by.dorder)
            + x * (bx.dorder_dx * by.k + bx.dx * by.dorder)
            + y * (by.dorder_dx * bx.k + by.dx * bx.dorder);
    }
    if order.re == 0.0 {
        // real on the critical line
        value.im = 0.0;
        d_order.re = 0.0;
    }
    Ok(ScaledDet { log_scale: bx.log_scale + by.log_scale, value, d_order, magnitude })
}

/// `∂_β g_k` at Bessel order `β`, from the order-derivative moments.
pub fn g_derivative(k: i64, order: ComplexOrder, bundle: &CuspBundle) -> Result<Complex64> {
    let m = ModeChar::new(k, bundle)?;
    let mut total = Complex64::new(0.0, 0.0);
    for x in [m.x_plus, m.x_minus] {
        let b = bessel_k_all(order, x, BESSEL_TOL)?;
        pole_check(&b)?;
        total += x * (b.dorder_dx * b.k - b.dx * b.dorder) / (b.k * b.k);
    }
    Ok(total)
}

/// `∫_lo^hi K_{iν}(v)²/v dv / K_{iν}(x)²` for real `ν`.
fn normalised_square_integral(nu: f64, x: f64, lo: f64, hi: f64) -> Result<f64> {
    let order = ComplexOrder::new(0.0, nu);
    let bx = bessel_k_all(order, x, BESSEL_TOL)?;
    pole_check(&bx)?;
    let mut failure = None;
    let r = integrate_real(
        |v| match bessel_k_all(order, v, BESSEL_TOL) {
            Ok(b) => {
                let ratio = b.k.re / bx.k.re;
                ratio * ratio * (2.0 * (b.log_scale - bx.log_scale)).exp() / v
            }
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        lo,
        hi,
        1e-10,
    );
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(r?.value)
}

/// `dg_k/dν` for real spectral `ν` from `−2ν Σ± K(x±)⁻² ∫_0^{x±} K(v)²/v dv`,
/// integrating from the origin as written in the source derivation. The
/// integral does not converge at `v = 0` for `ν ≠ 0`.
pub fn g_derivative_lower_integral(k: i64, nu: f64, bundle: &CuspBundle) -> Result<f64> {
    g_derivative_lower_integral_from(k, nu, bundle, 0.0)
}

/// [`g_derivative_lower_integral`] with the integrals started at `cutoff`
/// instead of 0, to expose how the value drifts as the cutoff shrinks.
pub fn g_derivative_lower_integral_from(k: i64, nu: f64, bundle: &CuspBundle, cutoff: f64) -> Result<f64> {
    let m = ModeChar::new(k, bundle)?;
    let mut total = 0.0;
    for x in [m.x_plus, m.x_minus] {
        total += normalised_square_integral(nu, x, cutoff, x)?;
    }
    Ok(-2.0 * nu * total)
}

/// `dg_k/dν` for real spectral `ν` from `+2ν Σ± K(x±)⁻² ∫_{x±}^∞ K(v)²/v dv`.
pub fn g_derivative_upper_integral(k: i64, nu: f64, bundle: &CuspBundle) -> Result<f64> {
    let m = ModeChar::new(k, bundle)?;
    let mut total = 0.0;
    for x in [m.x_plus, m.x_minus] {
        total += normalised_square_integral(nu, x, x, f64::INFINITY)?;
    }
    Ok(2.0 * nu * total)
}

/// One Fourier mode on the imaginary spectral axis `ν = it`, where the
/// Bessel order `t` is real and every quantity is real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealOrderMode {
    pub t: f64,
    /// `G_k(t) = g_k(it)`
    pub g: f64,
    /// `G_k'(t)`
    pub dg: f64,
    /// `log K_t(x₊)` and `log K_t(x₋)`
    pub log_k: [f64; 2],
    /// `∂_t log K_t(x±)`
    pub dlog_k: [f64; 2],
}

impl RealOrderMode {
    /// Evaluate at real order `t ≥ 0`. Mode 0 near its kernel zero `t = ½`
    /// goes through the divided-out form so `G` is accurate there.
    pub fn new(k: i64, t: f64, bundle: &CuspBundle) -> Result<Self> {
        let m = ModeChar::new(k, bundle)?;
        let t_abs = t.abs();
        if k == 0 && (t_abs - 0.5).abs() < crate::mode0::STABLE_RADIUS {
            let r = Mode0Reduced::new(t_abs, bundle)?;
            let sgn = t.signum();
            return Ok(Self {
                t,
                g: r.g(),
                dg: sgn * r.dg(),
                log_k: [r.log_k; 2],
                dlog_k: [sgn * r.dlog_k; 2],
            });
        }
        let c = bundle.boundary_constant();
        let mut g = c;
        let mut dg = 0.0;
        let mut log_k = [0.0; 2];
        let mut dlog_k = [0.0; 2];
        let xs = [m.x_plus, m.x_minus];
        for i in 0..2 {
            let x = xs[i];
            if i == 1 && xs[1] == xs[0] {
                g += g - c;
                dg *= 2.0;
                log_k[1] = log_k[0];
                dlog_k[1] = dlog_k[0];
                break;
            }
            if t_abs > UNIFORM_SWITCH {
                let lk = uniform_log_k(t_abs, x, UNIFORM_TERMS)?;
                let ld = uniform_log_derivative(t_abs, x, UNIFORM_TERMS)?;
                log_k[i] = lk.v;
                dlog_k[i] = lk.d;
                g += ld.v;
                dg += ld.d;
            } else {
                let b = bessel_k_all(ComplexOrder::real(t_abs), x, BESSEL_TOL)?;
                let (kk, kx, ko, kox) = (b.k.re, b.dx.re, b.dorder.re, b.dorder_dx.re);
                log_k[i] = b.log_scale + kk.ln();
                dlog_k[i] = ko / kk;
                g += x * kx / kk;
                dg += x * (kox * kk - kx * ko) / (kk * kk);
            }
        }
        // K_t and G are even in t
        let sgn = if t < 0.0 { -1.0 } else { 1.0 };
        Ok(Self { t, g, dg: sgn * dg, log_k, dlog_k: [sgn * dlog_k[0], sgn * dlog_k[1]] })
    }

    /// `log|G_k(t)|`
    pub fn log_abs_g(&self) -> f64 {
        self.g.abs().ln()
    }

    /// `G_k'/G_k`
    pub fn dlog_g(&self) -> f64 {
        self.dg / self.g
    }

    /// `log|F_k(t)|` with `F_k = K_t(x₊)K_t(x₋)G_k(t)`.
    pub fn log_abs_f(&self) -> f64 {
        self.log_k[0] + self.log_k[1] + self.log_abs_g()
    }

    /// `∂_t log|F_k(t)|`
    pub fn dlog_f(&self) -> f64 {
        self.dlog_k[0] + self.dlog_k[1] + self.dlog_g()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bundle() -> CuspBundle {
        CuspBundle::new(0.3, 1.0).unwrap()
    }

    #[test]
    fn symmetric_in_arguments() {
        let b = bundle();
        let o = ComplexOrder::spectral(Complex64::new(1.7, 0.0));
        assert_eq!(char_g(o, 2.0, 3.5, &b).unwrap(), char_g(o, 3.5, 2.0, &b).unwrap());
    }

    #[test]
    fn derivative_matches_difference() {
        let b = bundle();
        let h = 1e-5;
        for &nu in &[0.7, 2.3, 6.1] {
            let d = char_det_scaled(1, ComplexOrder::new(0.0, nu), &b, true).unwrap();
            let p = char_det_scaled(1, ComplexOrder::new(0.0, nu + h), &b, false).unwrap();
            let q = char_det_scaled(1, ComplexOrder::new(0.0, nu - h), &b, false).unwrap();
            let fd = (p.unscaled().unwrap() - q.unscaled().unwrap()) / (2.0 * h);
            // d/dν = i ∂_β
            let an = Complex64::i() * d.d_order * d.log_scale.exp();
            assert!((fd - an).norm() <= 1e-6 * an.norm().max(1e-300), "{nu}: {fd} vs {an}");
        }
    }

    #[test]
    fn real_order_mode_uniform_switch_is_continuous() {
        let b = bundle();
        let lo = RealOrderMode::new(2, UNIFORM_SWITCH - 1e-9, &b).unwrap();
        let hi = RealOrderMode::new(2, UNIFORM_SWITCH + 1e-9, &b).unwrap();
        assert!((lo.g - hi.g).abs() < 1e-10 * lo.g.abs());
        assert!((lo.dlog_f() - hi.dlog_f()).abs() < 1e-9 * lo.dlog_f().abs());
        assert!((lo.log_abs_f() - hi.log_abs_f()).abs() < 1e-9 * lo.log_abs_f().abs());
    }

    #[test]
    fn real_order_derivative_matches_difference() {
        let b = bundle();
        let h = 1e-5;
        for &(k, t) in &[(1, 0.8), (0, 3.0), (-3, 12.0), (2, 55.0)] {
            let m = RealOrderMode::new(k, t, &b).unwrap();
            let p = RealOrderMode::new(k, t + h, &b).unwrap();
            let q = RealOrderMode::new(k, t - h, &b).unwrap();
            let fd = (p.log_abs_f() - q.log_abs_f()) / (2.0 * h);
            assert!((fd - m.dlog_f()).abs() < 1e-6 * m.dlog_f().abs().max(1.0), "{k} {t}: {fd} {}", m.dlog_f());
        }
    }
}
