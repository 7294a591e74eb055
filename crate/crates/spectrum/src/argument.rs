use crate::{Result, SpectrumError};
use charfn::{char_det_scaled, CuspBundle};
use num_complex::Complex64;
use quadsum::gauss_legendre_nodes;
use specfun::ComplexOrder;

/// Axis-parallel rectangle in the spectral `ν`-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rect {
    /// `[0, r]×[−½, ½]`, the standard window for real zeros up to `r`.
    pub fn strip(r: f64) -> Self {
        Self { re_min: 0.0, re_max: r, im_min: -0.5, im_max: 0.5 }
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
        ]
    }
}

const GL_ORDER: usize = 8;
const MAX_DOUBLINGS: u32 = 7;
/// Smallest accepted Newton distance `|f/f'|` from a contour node to a zero.
const BOUNDARY_TOL: f64 = 1e-4;

/// `f'/f` of mode `k` at spectral `ν`, with the Newton distance `|f/f'|`.
fn log_derivative(k: i64, nu: Complex64, bundle: &CuspBundle) -> Result<(Complex64, f64)> {
    let d = char_det_scaled(k, ComplexOrder::spectral(nu), bundle, true)?;
    // d/dν = i ∂_β
    let ld = Complex64::i() * d.d_order / d.value;
    Ok((ld, 1.0 / ld.norm()))
}

fn contour_integral(k: i64, rect: &Rect, bundle: &CuspBundle, panel: f64, rule: &[(f64, f64)]) -> Result<(Complex64, f64)> {
    let c = rect.corners();
    let mut total = Complex64::new(0.0, 0.0);
    let mut closest = f64::INFINITY;
    for e in 0..4 {
        let (z0, z1) = (c[e], c[(e + 1) % 4]);
        let len = (z1 - z0).norm();
        let panels = (len / panel).ceil().max(1.0) as usize;
        let dz = (z1 - z0) / panels as f64;
        for p in 0..panels {
            let mid = z0 + dz * (p as f64 + 0.5);
            for &(x, w) in rule {
                let z = mid + dz * (0.5 * x);
                let (ld, rel) = log_derivative(k, z, bundle)?;
                closest = closest.min(rel);
                total += ld * dz * (0.5 * w);
            }
        }
    }
    Ok((total / Complex64::new(0.0, 2.0 * std::f64::consts::PI), closest))
}

/// `(1/2πi)∮ f_k'/f_k dν` around `rect` before rounding.
pub fn argument_principle_value(k: i64, rect: Rect, bundle: &CuspBundle) -> Result<f64> {
    let height = rect.im_max - rect.im_min;
    if !(height > 0.0) || !(rect.re_max > rect.re_min) {
        return Err(SpectrumError::Parameter(format!("degenerate rectangle {rect:?}")));
    }
    if height > 1.0 {
        return Err(SpectrumError::RectHeight(height));
    }
    let rule = gauss_legendre_nodes(GL_ORDER);
    let mut panel = 0.5f64.min(height);
    let (mut prev, closest) = contour_integral(k, &rect, bundle, panel, &rule)?;
    if closest < BOUNDARY_TOL {
        return Err(SpectrumError::BoundaryZero(closest));
    }
    for _ in 0..MAX_DOUBLINGS {
        panel *= 0.5;
        let (cur, _) = contour_integral(k, &rect, bundle, panel, &rule)?;
        if (cur - prev).norm() < 1e-3 {
            return Ok(cur.re);
        }
        prev = cur;
    }
    Ok(prev.re)
}

/// Number of zeros of `f_k` inside `rect`, by the argument principle.
pub fn argument_principle_count(k: i64, rect: Rect, bundle: &CuspBundle) -> Result<usize> {
    let v = argument_principle_value(k, rect, bundle)?;
    let n = v.round();
    if (v - n).abs() > 0.1 || n < 0.0 {
        return Err(SpectrumError::RoundingGap(v));
    }
    Ok(n as usize)
}
