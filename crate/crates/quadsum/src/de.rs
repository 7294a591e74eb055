//! Double-exponential (tanh-sinh / exp-sinh) quadrature with level doubling.

use crate::{finite, QuadError, QuadResult, Result};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

/// Upper limit of integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Finite(f64),
    Infinity,
}

impl From<f64> for Bound {
    fn from(b: f64) -> Self {
        if b == f64::INFINITY {
            Bound::Infinity
        } else {
            Bound::Finite(b)
        }
    }
}

const MAX_LEVEL: u32 = 12;
// Beyond |t| = 4.5 the tanh-sinh weights are below 1e-40 and the exp-sinh
// abscissae leave any range we care about.
const T_FINITE: f64 = 4.5;
const T_LEFT: f64 = 5.0;
const T_RIGHT: f64 = 4.7;

/// Integrate a complex-valued `f` over `[a, b]`, `b` possibly infinite.
///
/// Finite intervals use tanh-sinh, which tolerates integrable endpoint
/// singularities; half lines use the exp-sinh map `x = a + exp(π/2 sinh t)`.
/// The step is halved until two successive levels agree to `tol` relative to
/// the current value (or absolutely, when the value itself is below `tol`).
pub fn integrate<F>(f: F, a: f64, b: impl Into<Bound>, tol: f64) -> Result<QuadResult<Complex64>>
where
    F: FnMut(f64) -> Complex64,
{
    integrate_to(f, a, b, tol, tol * tol)
}

/// [`integrate`] with an explicit absolute floor: refinement stops once two
/// levels differ by at most `max(rel_tol·|value|, abs_tol)`. Use it when the
/// integrand carries evaluation noise far below the quantities of interest
/// but above `rel_tol` of this particular integral.
pub fn integrate_to<F>(mut f: F, a: f64, b: impl Into<Bound>, rel_tol: f64, abs_tol: f64) -> Result<QuadResult<Complex64>>
where
    F: FnMut(f64) -> Complex64,
{
    let tol = rel_tol;
    if !(tol > 0.0) || !tol.is_finite() || !(abs_tol >= 0.0) || !abs_tol.is_finite() {
        return Err(QuadError::InvalidTolerance(tol));
    }
    match b.into() {
        Bound::Finite(b) => {
            if !(a.is_finite() && b.is_finite()) || b < a {
                return Err(QuadError::InvalidInterval { a, b });
            }
            if a == b {
                return Ok(QuadResult { value: Complex64::new(0.0, 0.0), error_estimate: 0.0, evaluations: 0 });
            }
            let d = 0.5 * (b - a);
            let node = move |t: f64| -> (f64, f64) {
                let s = FRAC_PI_2 * t.sinh();
                let e = (-2.0 * s.abs()).exp();
                // distance to the nearer endpoint, computed without cancellation
                let gap = 2.0 * d * e / (1.0 + e);
                let x = if t >= 0.0 { b - gap } else { a + gap };
                let ch = s.cosh();
                let w = d * FRAC_PI_2 * t.cosh() / (ch * ch);
                (x, w)
            };
            run(&mut f, node, -T_FINITE, T_FINITE, tol, abs_tol, Some((a, b)))
        }
        Bound::Infinity => {
            if !a.is_finite() {
                return Err(QuadError::InvalidInterval { a, b: f64::INFINITY });
            }
            let node = move |t: f64| -> (f64, f64) {
                let e = (FRAC_PI_2 * t.sinh()).exp();
                (a + e, FRAC_PI_2 * t.cosh() * e)
            };
            run(&mut f, node, -T_LEFT, T_RIGHT, tol, abs_tol, None)
        }
    }
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F>(mut f: F, a: f64, b: impl Into<Bound>, tol: f64) -> Result<QuadResult<f64>>
where
    F: FnMut(f64) -> f64,
{
    let r = integrate(|x| Complex64::new(f(x), 0.0), a, b, tol)?;
    Ok(QuadResult { value: r.value.re, error_estimate: r.error_estimate, evaluations: r.evaluations })
}

fn run<F, N>(f: &mut F, node: N, t_lo: f64, t_hi: f64, tol: f64, abs_tol: f64, clamp: Option<(f64, f64)>) -> Result<QuadResult<Complex64>>
where
    F: FnMut(f64) -> Complex64,
    N: Fn(f64) -> (f64, f64),
{
    let mut evals = 0usize;
    let mut eval = |t: f64, evals: &mut usize| -> Result<Complex64> {
        let (x, w) = node(t);
        if w == 0.0 || !w.is_finite() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if let Some((a, b)) = clamp {
            // endpoints themselves are never sampled
            if x <= a || x >= b {
                return Ok(Complex64::new(0.0, 0.0));
            }
        }
        *evals += 1;
        let v = f(x);
        if !finite(v) {
            return Err(QuadError::NonFinite { at: x });
        }
        Ok(v * w)
    };

    let mut h = 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let n0 = (t_hi.max(-t_lo)).ceil() as i64;
    for i in -n0..=n0 {
        let t = i as f64;
        if t < t_lo || t > t_hi {
            continue;
        }
        sum += eval(t, &mut evals)?;
    }
    let mut prev = sum * h;
    let mut last_diff = f64::INFINITY;
    for _level in 1..=MAX_LEVEL {
        h *= 0.5;
        let n = ((t_hi.max(-t_lo)) / h).ceil() as i64;
        // new nodes are the odd multiples of h
        let mut i = if n % 2 == 0 { -n + 1 } else { -n };
        while i <= n {
            let t = i as f64 * h;
            if t >= t_lo && t <= t_hi {
                sum += eval(t, &mut evals)?;
            }
            i += 2;
        }
        let cur = sum * h;
        let diff = (cur - prev).norm();
        let scale = cur.norm();
        if diff <= (tol * scale).max(abs_tol) || diff == 0.0 {
            return Ok(QuadResult { value: cur, error_estimate: diff, evaluations: evals });
        }
        last_diff = diff;
        prev = cur;
    }
    Err(QuadError::NonConvergence { estimate: last_diff, evaluations: evals, tol })
}
