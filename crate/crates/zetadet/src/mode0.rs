//! Exact derivative at `s = 0` of the mode-0 Alvarez-Wentworth contribution.
//!
//! With `ψ(τ) = log|G₀(τ)|` on the real-order axis, `τ₀ = √(¼ + μ)` and
//! `X = 2παa`, the pieces are
//!
//! ```text
//! A'(0) = H_{μ,0}(2τ₀) = ψ(2τ₀) − ψ(τ₀) − (3/2)τ₀ψ'(τ₀)
//! R'(0) = (3/2)τ₀ψ'(τ₀)
//! M̃'(0) = sum of four endpoint terms, continued to s = 0
//! B'(0) = 0
//! ```
//!
//! and the total `log μ + A' + B' + M̃' + R'` collapses to
//! `log μ − ψ(τ₀) + log 2`.

use crate::{Result, ZetaError};
use charfn::mode0::Mode0Reduced;
use charfn::{CuspBundle, RealOrderMode, H_reg};
use quadsum::{integrate_real, Bound};
use serde::{Deserialize, Serialize};
use specfun::exp_integral_e1_scaled;
use std::f64::consts::{LN_2, PI};

const QUAD_TOL: f64 = 1e-13;

/// Derivatives at `s = 0` of the mode-0 pieces for one `μ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode0DetPieces {
    pub mu: f64,
    pub a_prime: f64,
    pub r_prime: f64,
    pub mtilde_prime: f64,
    pub b_prime: f64,
    pub total: f64,
}

fn require_nontrivial(bundle: &CuspBundle) -> Result<()> {
    if bundle.alpha == 0.0 {
        Err(charfn::CharError::TrivialMode.into())
    } else {
        Ok(())
    }
}

fn psi(t: f64, bundle: &CuspBundle) -> Result<RealOrderMode> {
    let m = RealOrderMode::new(0, t, bundle)?;
    if m.g == 0.0 || !m.g.is_finite() {
        return Err(charfn::CharError::PoleProximity(m.g.abs()).into());
    }
    Ok(m)
}

/// `G₀'(½)` from the exponential-integral closed form
/// `2y·e^y E₁(y) − 2`, `y = 4παa`.
pub fn kernel_slope(bundle: &CuspBundle) -> Result<f64> {
    require_nontrivial(bundle)?;
    let y = 4.0 * PI * bundle.alpha * bundle.a;
    Ok(2.0 * y * exp_integral_e1_scaled(y)? - 2.0)
}

/// The four derivatives at `s = 0` of the endpoint decomposition of `M̃`,
/// in order: the boundary term, the `s·sin πs` term (identically 0), the
/// `log(X² + t²)` term and the `(X² + t²)^{−1/2}` term.
fn mtilde_terms(mu: f64, bundle: &CuspBundle) -> Result<[f64; 4]> {
    let tau0 = (0.25 + mu).sqrt();
    let x = 2.0 * PI * bundle.alpha * bundle.a;
    let r2 = x * x + 4.0 * tau0 * tau0;
    let psi2 = psi(2.0 * tau0, bundle)?.log_abs_g();
    let boundary = -(psi2 - LN_2 - 0.5 * r2.ln() + x / r2.sqrt());
    // log term: (sin πs/π)∫_{2τ₀}^∞ (t²−τ₀²)^{−s} t/(X²+t²) dt
    //         = ½c^{−s} − (sin πs/2π) c^{−s} ∫₀^b w^{−s}/(1+w) dw
    let c = x * x + tau0 * tau0;
    let b = 3.0 * tau0 * tau0 / c;
    let j0 = integrate_real(|w| 1.0 / (1.0 + w), 0.0, b, QUAD_TOL)?.value;
    let log_term = -0.5 * c.ln() - 0.5 * j0;
    // algebraic term: sin πs/π times a convergent integral, so its derivative
    // is −X·∫_{2τ₀}^∞ ∂_t (X² + t²)^{−1/2} dt
    let inner = integrate_real(|t| -t / (x * x + t * t).powf(1.5), 2.0 * tau0, Bound::Infinity, QUAD_TOL)?.value;
    let algebraic = -x * inner;
    Ok([boundary, 0.0, log_term, algebraic])
}

/// The continued endpoint term
/// `(sin πs/π)∫_{2τ₀}^∞ (t² − τ₀²)^{−s} t/(X² + t²) dt`, written through
/// `∫₀^∞ v^{−s}/(1+v) dv = π/sin πs` so it is defined near `s = 0`.
pub fn mtilde_endpoint_continuation(s: f64, mu: f64, bundle: &CuspBundle) -> Result<f64> {
    let tau0 = (0.25 + mu).sqrt();
    let x = 2.0 * PI * bundle.alpha * bundle.a;
    let c = x * x + tau0 * tau0;
    let b = 3.0 * tau0 * tau0 / c;
    let j = integrate_real(|w| w.powf(-s) / (1.0 + w), 0.0, b, QUAD_TOL)?.value;
    Ok(0.5 * c.powf(-s) - (PI * s).sin() / (2.0 * PI) * c.powf(-s) * j)
}

/// `∫₀^∞ v^{−s}/(1 + v) dv = π/sin(πs)` for `0 < s < 1`.
pub fn stieltjes_power_integral(s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(ZetaError::Parameter(format!("s = {s} outside 0 < s < 1")));
    }
    Ok(PI / (PI * s).sin())
}

/// Exact mode-0 determinant pieces at `μ > 0`.
pub fn mode0_aw_logdet_derivative(mu: f64, bundle: &CuspBundle) -> Result<Mode0DetPieces> {
    require_nontrivial(bundle)?;
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(ZetaError::Parameter(format!("mu = {mu} must be positive")));
    }
    let tau0 = (0.25 + mu).sqrt();
    let a_prime = H_reg(0, 2.0 * tau0, mu, bundle)?.re;
    let r_prime = 1.5 * tau0 * psi(tau0, bundle)?.dlog_g();
    let mtilde_prime: f64 = mtilde_terms(mu, bundle)?.iter().sum();
    let b_prime = 0.0;
    let total = mu.ln() + a_prime + b_prime + mtilde_prime + r_prime;
    Ok(Mode0DetPieces { mu, a_prime, r_prime, mtilde_prime, b_prime, total })
}

/// The constant term of `log μ + A'_{μ,0}(0)` as `μ → 0⁺`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinitePart {
    /// Constant term from a `c₋₁/μ + c₀ + c₁μ` fit through the samples.
    pub value: f64,
    /// Fitted `c₋₁`; a genuine limit would make it 0.
    pub pole_coefficient: f64,
    /// The same constant from the Taylor data of `G₀` at `½`:
    /// `ψ(1) − log|G₀'(½)| − 9/4 − (3/4)·G₀''(½)/(2G₀'(½))`.
    pub series_value: f64,
    /// `(μ, log μ + A'_{μ,0}(0))`
    pub samples: Vec<(f64, f64)>,
}

pub const FINITE_PART_MUS: [f64; 3] = [1e-2, 1e-3, 1e-4];

pub fn mode0_finite_part(bundle: &CuspBundle) -> Result<FinitePart> {
    require_nontrivial(bundle)?;
    let mut samples = Vec::new();
    for mu in FINITE_PART_MUS {
        let tau0 = (0.25 + mu).sqrt();
        let a_prime = H_reg(0, 2.0 * tau0, mu, bundle)?.re;
        samples.push((mu, mu.ln() + a_prime));
    }
    // solve c₋₁/μ + c₀ + c₁μ = F(μ) through the three samples
    let rows: Vec<[f64; 3]> = samples.iter().map(|&(m, _)| [1.0 / m, 1.0, m]).collect();
    let rhs: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let c = solve3(&rows, &rhs).ok_or_else(|| ZetaError::Extrapolation("singular finite-part fit".into()))?;
    let at_half = Mode0Reduced::new(0.5, bundle)?;
    let slope = at_half.q_ratio;
    let curvature_ratio = (at_half.dq_ratio - at_half.q_ratio * at_half.dlog_k) / at_half.q_ratio;
    let psi1 = psi(1.0, bundle)?.log_abs_g();
    let series_value = psi1 - slope.abs().ln() - 2.25 - 0.75 * curvature_ratio;
    Ok(FinitePart { value: c[1], pole_coefficient: c[0], series_value, samples })
}

fn solve3(rows: &[[f64; 3]], rhs: &[f64]) -> Option<[f64; 3]> {
    let mut m: Vec<[f64; 4]> = rows.iter().zip(rhs).map(|(r, &y)| [r[0], r[1], r[2], y]).collect();
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        m.swap(col, piv);
        if m[col][col] == 0.0 {
            return None;
        }
        for r in 0..3 {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..4 {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

/// The large-a expansion `log|g₀(i)| − (3/4)·G₀'(½) − log a − log(πα)`,
/// with the derivative term from [`kernel_slope`].
pub fn mode0_fp_expansion(bundle: &CuspBundle) -> Result<f64> {
    let psi1 = psi(1.0, bundle)?.log_abs_g();
    Ok(psi1 - 0.75 * kernel_slope(bundle)? - bundle.a.ln() - (PI * bundle.alpha).ln())
}

/// One entry of [`mode0_fp_a_asymptotic_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FpResidual {
    pub a: f64,
    pub finite_part: f64,
    pub pole_coefficient: f64,
    pub expansion: f64,
    pub residual: f64,
}

/// Exact finite part minus its large-a expansion along `a_list`.
pub fn mode0_fp_a_asymptotic_check(alpha: f64, a_list: &[f64]) -> Result<Vec<FpResidual>> {
    if a_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ZetaError::Parameter("a_list must be increasing".into()));
    }
    a_list
        .iter()
        .map(|&a| {
            let b = CuspBundle::new(alpha, a)?;
            let fp = mode0_finite_part(&b)?;
            let expansion = mode0_fp_expansion(&b)?;
            if !fp.value.is_finite() {
                return Err(ZetaError::Extrapolation(format!("finite part not finite at a = {a}")));
            }
            Ok(FpResidual {
                a,
                finite_part: fp.value,
                pole_coefficient: fp.pole_coefficient,
                expansion,
                residual: fp.value - expansion,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stieltjes_integral_matches_quadrature() {
        let s = 0.5;
        let q = integrate_real(|v| v.powf(-s) / (1.0 + v), 0.0, Bound::Infinity, 1e-13).unwrap().value;
        assert!((q - stieltjes_power_integral(s).unwrap()).abs() < 1e-10, "{q}");
    }

    #[test]
    fn endpoint_continuation_matches_quadrature() {
        let b = CuspBundle::new(0.3, 1.0).unwrap();
        let (s, mu) = (0.5, 2.0);
        let tau0 = (0.25f64 + mu).sqrt();
        let x = 2.0 * PI * 0.3;
        let direct = integrate_real(
            |t| (t * t - tau0 * tau0).powf(-s) * t / (x * x + t * t),
            2.0 * tau0,
            Bound::Infinity,
            1e-13,
        )
        .unwrap()
        .value
            * (PI * s).sin()
            / PI;
        let cont = mtilde_endpoint_continuation(s, mu, &b).unwrap();
        assert!((direct - cont).abs() < 1e-10, "{direct} vs {cont}");
    }

    #[test]
    fn kernel_slope_matches_divided_form() {
        for (al, a) in [(0.3, 1.0), (0.9, 3.0), (0.1, 0.5)] {
            let b = CuspBundle::new(al, a).unwrap();
            let q = Mode0Reduced::new(0.5, &b).unwrap().q_ratio;
            let e1 = kernel_slope(&b).unwrap();
            assert!((q - e1).abs() < 1e-10 * e1.abs().max(1.0), "{q} vs {e1}");
        }
    }

    #[test]
    fn trivial_bundle_rejected() {
        let b = CuspBundle::new(0.0, 1.0).unwrap();
        assert!(mode0_aw_logdet_derivative(1.0, &b).is_err());
        assert!(mode0_aw_logdet_derivative(0.0, &CuspBundle::new(0.3, 1.0).unwrap()).is_err());
    }

    #[test]
    fn finite_part_samples_carry_the_pole() {
        let b = CuspBundle::new(0.3, 1.0).unwrap();
        let fp = mode0_finite_part(&b).unwrap();
        assert!((fp.pole_coefficient + 0.75).abs() < 1e-3, "{}", fp.pole_coefficient);
    }
}
