//! `K_β(x)` for complex order and positive argument.
//!
//! Everything comes from
//!
//! ```text
//! K_β(x) = ½ ∫_{−∞}^{∞} exp(−x cosh u + βu) du
//! ```
//!
//! integrated along the horizontal line `u = w + iθ`. For real order `θ = 0`
//! and this is the textbook representation. For orders with a large imaginary
//! part the real-line integrand oscillates with amplitude `O(1)` while the
//! answer is of size `e^{−π|Im β|/2}`, so all digits would cancel; moving the
//! line towards the saddle `u* = asinh(β/x)` removes the cancellation. The
//! shift stays a margin `~ c/|Im β|` short of `π/2`, where the integrand stops
//! decaying.
//!
//! The integrand is evaluated relative to its peak modulus, which is returned
//! separately as a log-scale, so huge real orders and tiny imaginary-order
//! values neither overflow nor underflow. Trapezoid sums on the shifted line
//! converge geometrically; the step is halved (reusing nodes) until the sums
//! settle.

use crate::{ComplexOrder, Result, SpecError};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

/// Limits on where the quadrature is trusted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselConfig {
    /// Largest accepted `|Re β|`.
    pub order_cap: f64,
    /// Smallest accepted argument.
    pub arg_floor: f64,
    /// Log-magnitude drop below the peak at which the integrand is cut.
    pub window_drop: f64,
    /// Distance of the contour from `Im u = ±π/2`, in units of `1/|Im β|`.
    pub shift_margin: f64,
    /// Maximum number of step halvings.
    pub max_level: u32,
}

impl Default for BesselConfig {
    fn default() -> Self {
        Self { order_cap: 50.0, arg_floor: 1e-6, window_drop: 52.0, shift_margin: 2.5, max_level: 14 }
    }
}

/// A quantity stored as `value · exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled<T> {
    pub log_scale: f64,
    pub value: T,
}

/// `K_β(x)` with derivatives, all sharing one scale factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselK {
    pub log_scale: f64,
    pub k: Complex64,
    /// `∂_x K`
    pub dx: Complex64,
    /// `∂²_x K`
    pub dxx: Complex64,
    /// `∂_β K`
    pub dorder: Complex64,
    /// `∂_β ∂_x K`
    pub dorder_dx: Complex64,
}

impl BesselK {
    fn unscale(&self, z: Complex64) -> Complex64 {
        z * self.log_scale.exp()
    }
    pub fn value(&self) -> Complex64 {
        self.unscale(self.k)
    }
    pub fn deriv_x(&self) -> Complex64 {
        self.unscale(self.dx)
    }
    pub fn deriv_xx(&self) -> Complex64 {
        self.unscale(self.dxx)
    }
    pub fn deriv_order(&self) -> Complex64 {
        self.unscale(self.dorder)
    }
    pub fn deriv_order_x(&self) -> Complex64 {
        self.unscale(self.dorder_dx)
    }
    /// `K'/K`, free of the scale factor.
    pub fn log_deriv_x(&self) -> Complex64 {
        self.dx / self.k
    }
    /// `∂_β K / K`.
    pub fn log_deriv_order(&self) -> Complex64 {
        self.dorder / self.k
    }
}

fn debug_nodes() -> bool {
    static FLAG: OnceLock<bool> = OnceLock::new();
    *FLAG.get_or_init(|| std::env::var_os("CUSP_DEBUG_NODES").is_some())
}

/// `½ ∫ exp(−x cosh u + βu) · weights(u) du` over the shifted line, for `N`
/// weight functions at once.
///
/// `growth` is the exponential rate at which the weights may grow in `|u|`
/// (2 for `cosh² u`); the window is widened accordingly. The result is
/// scaled by the peak modulus of the bare exponential.
pub fn line_integral<const N: usize, W>(
    order: Complex64,
    x: f64,
    tol: f64,
    growth: f64,
    cfg: &BesselConfig,
    weights: W,
) -> Result<Scaled<[Complex64; N]>>
where
    W: Fn(Complex64) -> [Complex64; N],
{
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecError::Domain(x));
    }
    if x < cfg.arg_floor {
        return Err(SpecError::ArgumentFloor { x, floor: cfg.arg_floor });
    }
    if order.re.abs() > cfg.order_cap {
        return Err(SpecError::OrderCap { re: order.re, cap: cfg.order_cap });
    }
    if !(tol > 0.0) || !order.re.is_finite() || !order.im.is_finite() {
        return Err(SpecError::Parameter(format!("order {order}, tol {tol}")));
    }
    let (p, q) = (order.re, order.im);

    let saddle = (order / x).asinh();
    let theta_max = if q == 0.0 { 0.0 } else { (FRAC_PI_2 - (cfg.shift_margin / q.abs()).min(FRAC_PI_2)).max(0.0) };
    let theta = saddle.im.clamp(-theta_max, theta_max);
    let (sin_t, cos_t) = theta.sin_cos();
    let xc = x * cos_t;
    let w_peak = (p / xc).asinh();
    let peak = -xc * w_peak.cosh() + p * w_peak - q * theta;
    // log modulus relative to the peak, written without cancellation
    let rel_log = |w: f64| -2.0 * xc * (0.5 * (w + w_peak)).sinh() * (0.5 * (w - w_peak)).sinh() + p * (w - w_peak);

    // The bare integrand drops by more than `window_drop` plus the weight growth.
    let outside = |w: f64| -rel_log(w) > cfg.window_drop + growth * (w.abs() + 1.0);
    let reach = |dir: f64| -> f64 {
        // bracket the crossing geometrically, then bisect
        let mut d = 1.0;
        if outside(w_peak + dir * d) {
            while d > 1e-200 && outside(w_peak + dir * 0.5 * d) {
                d *= 0.5;
            }
        } else {
            while !outside(w_peak + dir * d) && d < 1e3 {
                d *= 2.0;
            }
        }
        let (mut lo, mut hi) = (0.5 * d, d);
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if outside(w_peak + dir * mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    let mut right = reach(1.0);
    let mut left = reach(-1.0);
    if p == 0.0 {
        // keep the grid symmetric so imaginary orders give exactly real K
        let m = right.max(left);
        right = m;
        left = m;
    }

    let integrand = |w: f64| -> [Complex64; N] {
        let sh = w.sinh();
        let re = rel_log(w);
        let im = -x * sh * sin_t + q * w + p * theta;
        let e = Complex64::from_polar(re.exp(), im);
        let u = Complex64::new(w, theta);
        let ws = weights(u);
        let mut out = [Complex64::new(0.0, 0.0); N];
        for i in 0..N {
            out[i] = e * ws[i];
        }
        out
    };

    let margin = FRAC_PI_2 - theta.abs();
    let mut h = (0.5 * margin).clamp(1e-3, 0.5).min((left + right) / 16.0);
    let mut sum = [Complex64::new(0.0, 0.0); N];
    let mut abs_sum = [0.0f64; N];
    let add = |j: i64, h: f64, sum: &mut [Complex64; N], abs_sum: &mut [f64; N]| {
        let v = integrand(w_peak + j as f64 * h);
        for i in 0..N {
            sum[i] += v[i];
            abs_sum[i] += v[i].norm();
        }
    };
    let (mut n_lo, mut n_hi) = ((left / h).ceil() as i64, (right / h).ceil() as i64);
    for j in -n_lo..=n_hi {
        add(j, h, &mut sum, &mut abs_sum);
    }
    let mut evals = (n_lo + n_hi + 1) as usize;
    let mut prev: [Complex64; N] = std::array::from_fn(|i| sum[i] * (0.5 * h));
    let mut worst = f64::INFINITY;
    for _level in 0..cfg.max_level {
        h *= 0.5;
        n_lo *= 2;
        n_hi *= 2;
        let mut j = -n_lo + 1;
        while j <= n_hi {
            add(j, h, &mut sum, &mut abs_sum);
            evals += 1;
            j += 2;
        }
        let cur: [Complex64; N] = std::array::from_fn(|i| sum[i] * (0.5 * h));
        let mut ok = true;
        worst = 0.0;
        for i in 0..N {
            let diff = (cur[i] - prev[i]).norm();
            let floor = 64.0 * f64::EPSILON * abs_sum[i] * 0.5 * h;
            let allowed = (tol * cur[i].norm()).max(floor);
            if diff > allowed {
                ok = false;
            }
            let rel = if cur[i].norm() > 0.0 { diff / cur[i].norm() } else { diff };
            worst = worst.max(rel);
        }
        if ok {
            if debug_nodes() {
                eprintln!("line_integral: order={order} x={x} theta={theta:.4} h={h:.2e} nodes={evals}");
            }
            return Ok(Scaled { log_scale: peak, value: cur });
        }
        prev = cur;
    }
    Err(SpecError::Accuracy { requested: tol, achieved: worst })
}

/// All five moments at once. The order is canonicalised (`Re β ≥ 0`, and
/// `Im β ≥ 0` when `Re β = 0`) so that `K_{−β} = K_β` holds bit for bit.
pub fn bessel_k_all(order: ComplexOrder, x: f64, tol: f64) -> Result<BesselK> {
    bessel_k_all_with(&BesselConfig::default(), order, x, tol)
}

pub fn bessel_k_all_with(cfg: &BesselConfig, order: ComplexOrder, x: f64, tol: f64) -> Result<BesselK> {
    let flip = order.re < 0.0 || (order.re == 0.0 && order.im < 0.0);
    let beta = if flip { order.neg() } else { order }.as_complex();
    let r = line_integral::<5, _>(beta, x, tol, 2.0, cfg, |u| {
        let c = u.cosh();
        [Complex64::new(1.0, 0.0), -c, c * c, u, -u * c]
    })?;
    let [mut k, mut dx, mut dxx, mut dorder, mut dorder_dx] = r.value;
    if beta.re == 0.0 {
        // imaginary order: K, K', K'' are real and ∂_β K is imaginary
        k.im = 0.0;
        dx.im = 0.0;
        dxx.im = 0.0;
        dorder.re = 0.0;
        dorder_dx.re = 0.0;
    }
    if beta.im == 0.0 {
        k.im = 0.0;
        dx.im = 0.0;
        dxx.im = 0.0;
        dorder.im = 0.0;
        dorder_dx.im = 0.0;
    }
    if flip {
        dorder = -dorder;
        dorder_dx = -dorder_dx;
    }
    Ok(BesselK { log_scale: r.log_scale, k, dx, dxx, dorder, dorder_dx })
}

fn unscaled(b: &BesselK, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    let lm = b.log_scale + z.norm().ln();
    if lm > 709.0 {
        return Err(SpecError::Overflow(lm));
    }
    Ok(z * b.log_scale.exp())
}

/// `K_β(x)` to relative accuracy `tol`.
pub fn bessel_k(order: ComplexOrder, x: f64, tol: f64) -> Result<Complex64> {
    let b = bessel_k_all(order, x, tol)?;
    unscaled(&b, b.k)
}

/// `∂_x K_β(x)`.
pub fn bessel_k_dx(order: ComplexOrder, x: f64, tol: f64) -> Result<Complex64> {
    let b = bessel_k_all(order, x, tol)?;
    unscaled(&b, b.dx)
}

/// `∂²_x K_β(x)`.
pub fn bessel_k_dxx(order: ComplexOrder, x: f64, tol: f64) -> Result<Complex64> {
    let b = bessel_k_all(order, x, tol)?;
    unscaled(&b, b.dxx)
}

/// `∂_β K_β(x)`.
pub fn bessel_k_dorder(order: ComplexOrder, x: f64, tol: f64) -> Result<Complex64> {
    let b = bessel_k_all(order, x, tol)?;
    unscaled(&b, b.dorder)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn k_half(x: f64) -> f64 {
        (PI / (2.0 * x)).sqrt() * (-x).exp()
    }

    #[test]
    fn half_order_closed_form() {
        for x in [0.01, 0.3, 2.0, 17.0] {
            let k = bessel_k(ComplexOrder::real(0.5), x, 1e-14).unwrap();
            assert!((k.re / k_half(x) - 1.0).abs() < 1e-13, "x={x} {k}");
            assert_eq!(k.im, 0.0);
        }
    }

    #[test]
    fn half_order_derivative() {
        let x = 2.0;
        let d = bessel_k_dx(ComplexOrder::real(0.5), x, 1e-14).unwrap().re;
        let exact = -(1.0 + 1.0 / (2.0 * x)) * k_half(x);
        assert!((d / exact - 1.0).abs() < 1e-13);
    }

    #[test]
    fn even_in_order_bit_exact() {
        for (re, im) in [(0.7, 3.1), (0.0, 12.0), (4.2, -0.3), (0.0, 0.4)] {
            let o = ComplexOrder::new(re, im);
            let a = bessel_k_all(o, 5.0, 1e-12).unwrap();
            let b = bessel_k_all(o.neg(), 5.0, 1e-12).unwrap();
            assert_eq!(a.k, b.k);
            assert_eq!(a.dx, b.dx);
            assert_eq!(a.dorder, -b.dorder);
        }
    }

    #[test]
    fn imaginary_order_is_real() {
        let b = bessel_k_all(ComplexOrder::new(0.0, 30.0), 3.0, 1e-12).unwrap();
        assert_eq!(b.k.im, 0.0);
        assert_eq!(b.dorder.re, 0.0);
    }

    #[test]
    fn refuses_outside_limits() {
        assert!(matches!(bessel_k(ComplexOrder::real(1.0), 0.0, 1e-10), Err(SpecError::Domain(_))));
        assert!(matches!(bessel_k(ComplexOrder::real(1.0), 1e-8, 1e-10), Err(SpecError::ArgumentFloor { .. })));
        assert!(matches!(bessel_k(ComplexOrder::real(60.0), 1.0, 1e-10), Err(SpecError::OrderCap { .. })));
    }
}
