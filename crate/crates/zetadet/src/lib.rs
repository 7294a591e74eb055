//! Spectral zeta functions of the cusp pseudo-Laplacian with
//! Alvarez-Wentworth boundary conditions.
//!
//! Two independent routes to `ζ(s) = Σ (λ_j + μ)^{−s}` on `1 < Re s < 2`:
//! summing an enumerated spectrum ([`zeta_direct`]) and integrating the
//! logarithmic derivative of the characteristic functions along the
//! real-order axis ([`zeta_integral`]). The crate also evaluates the mode-0
//! determinant pieces exactly and the large-μ and large-a expansions of
//! `log det`.

mod asymptotics;
pub mod complex_serde;
mod direct;
mod eta;
mod fit;
mod integral;
mod mode0;


pub use asymptotics::{
    arctan_integral, arctan_integral_gauss, asymptotic_logdet_a, asymptotic_logdet_a_alpha0, asymptotic_logdet_mu,
    asymptotic_logdet_mu_alpha0, AsympReport, TheoremId,
};
pub use direct::{zeta_direct, zeta_direct_with, DirectTail};
pub use mode0::{
    kernel_slope, mode0_aw_logdet_derivative, mode0_finite_part, mode0_fp_a_asymptotic_check, mode0_fp_expansion,
    mtilde_endpoint_continuation, stieltjes_power_integral, FinitePart, FpResidual, Mode0DetPieces, FINITE_PART_MUS,
};
pub use eta::{eta_sum, eta_sum_limit_check, eta_sum_limit_corrected, eta_sum_limit_stated, EtaCheck, EtaSum};
pub use integral::{mode_log_derivative, mode_zeta_integral, zeta_integral, zeta_integral_with, IntegralOptions};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which route produced a [`ZetaEval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Direct,
    Integral,
}

/// One value of the spectral zeta function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaEval {
    #[serde(with = "complex_serde")]
    pub s: Complex64,
    pub mu: f64,
    #[serde(with = "complex_serde")]
    pub value: Complex64,
    /// Estimated size of everything the truncation left out or modelled.
    pub truncation_estimate: f64,
    pub route: Route,
}

#[derive(Debug, Error)]
pub enum ZetaError {
    #[error("the series diverges for Re s = {0} ≤ 1")]
    Divergent(f64),
    #[error("Re s = {0} outside the strip 1 < Re s < 2")]
    Strip(f64),
    #[error("insufficient spectrum slice: {0}")]
    InsufficientSlice(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("extrapolation unstable: {0}")]
    Extrapolation(String),
    #[error(transparent)]
    Char(#[from] charfn::CharError),
    #[error(transparent)]
    Spectrum(#[from] spectrum::SpectrumError),
    #[error(transparent)]
    Special(#[from] specfun::SpecError),
    #[error(transparent)]
    Quadrature(#[from] quadsum::QuadError),
}

pub type Result<T> = std::result::Result<T, ZetaError>;

pub(crate) fn check_mu(mu: f64) -> Result<()> {
    if mu >= 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(ZetaError::Parameter(format!("mu = {mu} must be finite and nonnegative")))
    }
}
