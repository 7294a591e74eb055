use crate::{Result, SpectrumConfig, SpectrumError};
use charfn::{char_det_scaled, CharError, CuspBundle, ModeChar};
use specfun::ComplexOrder;
use std::f64::consts::PI;

/// The determinant of one mode on the real spectral axis, at one point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Sample {
    pub r: f64,
    /// value up to a positive factor
    pub value: f64,
    /// `d/dr` of the value, same factor
    pub slope: f64,
    pub magnitude: f64,
    pub log_scale: f64,
}

impl Sample {
    pub fn relative(&self) -> f64 {
        self.value.abs() / self.magnitude
    }

    /// `|f|` at this point over `|f|` at `other`, scale factors included.
    fn ratio_to(&self, other: &Sample) -> f64 {
        self.value.abs() / other.value.abs() * (self.log_scale - other.log_scale).exp()
    }
}

pub(crate) fn sample(k: i64, r: f64, bundle: &CuspBundle) -> Result<Sample> {
    let d = char_det_scaled(k, ComplexOrder::new(0.0, r), bundle, true)?;
    // d/dr = i ∂_β on the critical line
    Ok(Sample { r, value: d.value.re, slope: -d.d_order.im, magnitude: d.magnitude, log_scale: d.log_scale })
}

/// Scan step: `min(max_step, π/(4·max x±))`.
pub(crate) fn scan_step(mode: &ModeChar, cfg: &SpectrumConfig) -> f64 {
    cfg.max_step.min(PI / (4.0 * mode.x_plus.max(mode.x_minus)))
}

/// Real zeros of `r ↦ f_k(r)` in `(0, r_max]`, ascending, each bisected to a
/// bracket no wider than `tol`. Returns the zeros with their residuals:
/// `|f|` at the zero relative to the larger `|f|` at the ends of the
/// bracketing cell. (Relative to the term sizes would not do, since at
/// `α = 0` every term carries the factor `K_{iν}(x)` and they vanish together.)
pub fn find_mode_zeros(k: i64, r_max: f64, bundle: &CuspBundle, tol: f64) -> Result<Vec<(f64, f64)>> {
    find_mode_zeros_with(k, r_max, bundle, tol, &SpectrumConfig::default())
}

pub fn find_mode_zeros_with(
    k: i64,
    r_max: f64,
    bundle: &CuspBundle,
    tol: f64,
    cfg: &SpectrumConfig,
) -> Result<Vec<(f64, f64)>> {
    if !(tol > 0.0) || !(r_max >= 0.0) || !r_max.is_finite() {
        return Err(SpectrumError::Parameter(format!("r_max = {r_max}, tol = {tol}")));
    }
    let mode = ModeChar::new(k, bundle)?;
    let step = scan_step(&mode, cfg);
    let n = (r_max / step).ceil() as usize;
    let mut out: Vec<(f64, f64)> = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let mut left = sample(k, 0.0, bundle)?;
    for i in 1..=n {
        let r = if i == n { r_max } else { i as f64 * step };
        let right = sample(k, r, bundle)?;
        scan_cell(k, bundle, left, right, tol, cfg.max_refine_depth, &mut out)?;
        left = right;
    }
    // a zero sitting exactly on r = 0 is not positive
    out.retain(|z| z.0 > 0.0);
    let mut dedup: Vec<(f64, f64)> = Vec::with_capacity(out.len());
    for z in out {
        match dedup.last() {
            Some(p) if z.0 - p.0 <= 2.0 * tol => {}
            _ => dedup.push(z),
        }
    }
    for &(r, res) in &dedup {
        if res > cfg.residual_tol {
            return Err(SpectrumError::Residual { r, residual: res, tol: cfg.residual_tol });
        }
    }
    Ok(dedup)
}

/// A cell may hide an even number of crossings when the value heads towards
/// zero at the left end and away from it at the right end.
fn suspicious(a: &Sample, b: &Sample) -> bool {
    a.value * a.slope < 0.0 && b.value * b.slope > 0.0
}

fn scan_cell(
    k: i64,
    bundle: &CuspBundle,
    a: Sample,
    b: Sample,
    tol: f64,
    depth: u32,
    out: &mut Vec<(f64, f64)>,
) -> Result<()> {
    if a.value == 0.0 {
        out.push((a.r, 0.0));
        return Ok(());
    }
    let crosses = a.value * b.value < 0.0;
    let wiggles = a.slope * b.slope < 0.0;
    if crosses && !wiggles {
        out.push(bisect(k, bundle, a, b, tol)?);
        return Ok(());
    }
    if !crosses && !suspicious(&a, &b) {
        return Ok(());
    }
    if depth == 0 {
        if crosses {
            out.push(bisect(k, bundle, a, b, tol)?);
            return Ok(());
        }
        let closest = a.relative().min(b.relative());
        if closest < 1e-8 {
            return Err(SpectrumError::ScanResolution(0.5 * (a.r + b.r)));
        }
        return Ok(());
    }
    let m = sample(k, 0.5 * (a.r + b.r), bundle)?;
    scan_cell(k, bundle, a, m, tol, depth - 1, out)?;
    scan_cell(k, bundle, m, b, tol, depth - 1, out)
}

fn bisect(k: i64, bundle: &CuspBundle, mut a: Sample, mut b: Sample, tol: f64) -> Result<(f64, f64)> {
    let reference = if a.ratio_to(&b) > 1.0 { a } else { b };
    while b.r - a.r > tol {
        let mid = 0.5 * (a.r + b.r);
        if mid <= a.r || mid >= b.r {
            break;
        }
        let m = sample(k, mid, bundle)?;
        if m.value == 0.0 {
            return Ok((mid, 0.0));
        }
        if m.value * a.value < 0.0 {
            b = m;
        } else {
            a = m;
        }
    }
    let r = 0.5 * (a.r + b.r);
    let at = sample(k, r, bundle)?;
    Ok((r, at.ratio_to(&reference)))
}

/// Mode-0 structure: whether `f₀(i/2) = 0` holds to `tol` relative to the
/// term scale, and the real zeros of `f₀` in `(0, r_max]`.
pub fn mode0_zero_structure(bundle: &CuspBundle, r_max: f64, tol: f64) -> Result<(bool, Vec<(f64, f64)>)> {
    if bundle.alpha == 0.0 {
        return Err(CharError::TrivialMode.into());
    }
    // ν = i/2 is Bessel order −½
    let d = char_det_scaled(0, ComplexOrder::real(-0.5), bundle, false)?;
    let kernel = d.value.norm() <= tol.max(1e-12) * d.magnitude;
    Ok((kernel, find_mode_zeros(0, r_max, bundle, tol)?))
}
