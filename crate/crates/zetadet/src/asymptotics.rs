//! Term-by-term evaluators for the large-μ and large-a expansions of
//! `log det(Δ + μ)` and `log det' Δ`.

use crate::{Result, ZetaError};
use quadsum::{gauss_legendre, integrate_real, Bound};
use serde::{Deserialize, Serialize};
use specfun::{log_gamma, EULER_GAMMA};
use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};

/// Which expansion a report evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// `μ → ∞`, non-trivial bundle.
    MuAlpha,
    /// `μ → ∞`, trivial bundle.
    MuAlpha0,
    /// `a → ∞`, non-trivial bundle.
    AAlpha,
    /// `a → ∞`, trivial bundle.
    AAlpha0,
}

impl std::str::FromStr for TheoremId {
    type Err = ZetaError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu-alpha" => Ok(Self::MuAlpha),
            "mu-alpha0" => Ok(Self::MuAlpha0),
            "a-alpha" => Ok(Self::AAlpha),
            "a-alpha0" => Ok(Self::AAlpha0),
            _ => Err(ZetaError::Parameter(format!("unknown theorem {s:?}; expected mu-alpha, mu-alpha0, a-alpha or a-alpha0"))),
        }
    }
}

/// Labelled term values of one expansion. `constant` repeats the value of
/// the `"constant"` term (0 when the expansion has none).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsympReport {
    pub theorem_id: TheoremId,
    pub alpha: f64,
    pub a: f64,
    pub mu: f64,
    pub term_values: BTreeMap<String, f64>,
    pub constant: f64,
    /// Exact value minus the expansion, when an exact reference exists.
    pub residual: Option<f64>,
}

impl AsympReport {
    /// Sum of all terms.
    pub fn total(&self) -> f64 {
        self.term_values.values().sum()
    }
}

fn arctan_pair(t: f64, alpha: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    ((t / (1.0 + alpha)).atan() + (t / (1.0 - alpha)).atan()) / (2.0 * PI * t).exp_m1()
}

/// `∫₀^∞ (arctan(t/(1+α)) + arctan(t/(1−α)))/(e^{2πt} − 1) dt` by exp-sinh
/// quadrature.
pub fn arctan_integral(alpha: f64) -> Result<f64> {
    check_alpha_closed(alpha)?;
    Ok(integrate_real(|t| arctan_pair(t, alpha), 0.0, Bound::Infinity, 1e-14)?.value)
}

/// The same integral by composite 20-point Gauss-Legendre on `[0, 12]`;
/// the integrand is below `e^{−75}` beyond.
pub fn arctan_integral_gauss(alpha: f64) -> Result<f64> {
    check_alpha_closed(alpha)?;
    Ok(gauss_legendre(|t| arctan_pair(t, alpha), 0.0, 12.0, 20, 48))
}

fn check_alpha_closed(alpha: f64) -> Result<()> {
    if (0.0..1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(ZetaError::Parameter(format!("alpha = {alpha} outside [0, 1)")))
    }
}

fn check_alpha_open(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(ZetaError::Parameter(format!("alpha = {alpha} outside (0, 1)")))
    }
}

fn check_mu(mu: f64) -> Result<()> {
    if mu > 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(ZetaError::Parameter(format!("mu = {mu} must be positive")))
    }
}

fn report(theorem_id: TheoremId, alpha: f64, a: f64, mu: f64, terms: &[(&str, f64)]) -> AsympReport {
    let term_values: BTreeMap<String, f64> = terms.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let constant = term_values.get("constant").copied().unwrap_or(0.0);
    AsympReport { theorem_id, alpha, a, mu, term_values, constant, residual: None }
}

/// Large-μ expansion of `log det(Δ + μ)` for `α ≠ 0`,
/// `a > 1/(4π(1 − α))`.
pub fn asymptotic_logdet_mu(alpha: f64, a: f64, mu: f64) -> Result<AsympReport> {
    check_alpha_open(alpha)?;
    check_mu(mu)?;
    if !(a > 1.0 / (4.0 * PI * (1.0 - alpha))) {
        return Err(ZetaError::Parameter(format!("a = {a} must exceed 1/(4π(1 − α))")));
    }
    let lm = mu.ln();
    let sm = mu.sqrt();
    let bracket = 1.0 / (2.0 * a) + alpha * ((1.0 + alpha) / (1.0 - alpha)).ln() + alpha.ln()
        + 1.5 * (1.0 - alpha * alpha).ln()
        - 2.0 * arctan_integral(alpha)?
        + 4.0 * (PI * a).ln();
    Ok(report(
        TheoremId::MuAlpha,
        alpha,
        a,
        mu,
        &[
            ("mu_log_mu", mu * lm / (2.0 * PI * a)),
            ("mu", mu / (2.0 * PI * a)),
            ("sqrt_mu_log_mu", 4.0 * sm * lm),
            ("sqrt_mu", -2.0 * bracket * sm),
            ("log_mu", (1.0 + alpha) * lm),
            ("constant", -2.0 * LN_2),
        ],
    ))
}

/// Large-μ expansion of `log det(Δ + μ)` for `α = 0`, `a > 1/(4π)`.
pub fn asymptotic_logdet_mu_alpha0(a: f64, mu: f64) -> Result<AsympReport> {
    check_mu(mu)?;
    if !(a > 1.0 / (4.0 * PI)) {
        return Err(ZetaError::Parameter(format!("a = {a} must exceed 1/(4π)")));
    }
    let lm = mu.ln();
    let sm = mu.sqrt();
    // 4∫ arctan(t)/(e^{2πt} − 1) dt is twice the α = 0 pair integral
    let bracket = 1.0 / (2.0 * a) + 1.0 + 3.0 * (PI * a).ln() - 2.0 * arctan_integral(0.0)?;
    Ok(report(
        TheoremId::MuAlpha0,
        0.0,
        a,
        mu,
        &[
            ("mu_log_mu", -mu * lm / (2.0 * PI * a)),
            ("mu", mu / (2.0 * PI * a)),
            ("sqrt_mu_log_mu", 3.0 * sm * lm),
            ("sqrt_mu", -2.0 * bracket * sm),
        ],
    ))
}

/// The α-dependent constant of the large-a expansion:
/// `−log(sin πα/(πα)) − 2 log Γ(1 − α) − 2αγ + 2α log 4π − (3/2) log 2 + (1/2) log πα`.
fn a_constant(alpha: f64) -> Result<f64> {
    let pa = PI * alpha;
    Ok(-(pa.sin() / pa).ln() - 2.0 * log_gamma(1.0 - alpha)? - 2.0 * alpha * EULER_GAMMA
        + 2.0 * alpha * (4.0 * PI).ln()
        - 1.5 * LN_2
        + 0.5 * pa.ln())
}

/// Large-a expansion of `log det' Δ` for `α ≠ 0`.
pub fn asymptotic_logdet_a(alpha: f64, a: f64) -> Result<AsympReport> {
    check_alpha_open(alpha)?;
    if !(a > 0.0) || !a.is_finite() {
        return Err(ZetaError::Parameter(format!("a = {a} must be positive")));
    }
    let linear = (2.0 * PI / 3.0 + 4.0 * PI * alpha * alpha - 2.0 * PI * alpha) * a;
    Ok(report(
        TheoremId::AAlpha,
        alpha,
        a,
        0.0,
        &[("linear_a", linear), ("log_a", (0.5 + 2.0 * alpha) * a.ln()), ("constant", a_constant(alpha)?)],
    ))
}

/// Large-a expansion of `log det' Δ` for `α = 0`: the single term `(2π/3)a`.
pub fn asymptotic_logdet_a_alpha0(a: f64) -> Result<AsympReport> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(ZetaError::Parameter(format!("a = {a} must be positive")));
    }
    Ok(report(TheoremId::AAlpha0, 0.0, a, 0.0, &[("linear_a", 2.0 * PI * a / 3.0)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Binet: ∫₀^∞ arctan(t/z)/(e^{2πt} − 1) dt = ½(log Γ(z) − (z − ½)log z + z − ½ log 2π).
    fn binet(z: f64) -> f64 {
        0.5 * (log_gamma(z).unwrap() - (z - 0.5) * z.ln() + z - 0.5 * (2.0 * PI).ln())
    }

    #[test]
    fn arctan_integral_matches_binet() {
        for alpha in [0.0, 0.3, 0.7] {
            let want = binet(1.0 + alpha) + binet(1.0 - alpha);
            assert!((arctan_integral(alpha).unwrap() - want).abs() < 1e-13, "{alpha}");
            assert!((arctan_integral_gauss(alpha).unwrap() - want).abs() < 1e-13, "{alpha}");
        }
    }

    #[test]
    fn theorem_ids_parse() {
        for (s, id) in [("mu-alpha", TheoremId::MuAlpha), ("a-alpha0", TheoremId::AAlpha0)] {
            assert_eq!(s.parse::<TheoremId>().unwrap(), id);
        }
        assert!("nope".parse::<TheoremId>().is_err());
    }

    #[test]
    fn domain_checks() {
        assert!(asymptotic_logdet_mu(0.0, 1.0, 10.0).is_err());
        assert!(asymptotic_logdet_mu(0.3, 0.05, 10.0).is_err());
        assert!(asymptotic_logdet_mu_alpha0(0.05, 10.0).is_err());
        assert!(asymptotic_logdet_a(1.0, 10.0).is_err());
    }
}
