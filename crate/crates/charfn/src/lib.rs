//! Characteristic functions for the cusp with Alvarez-Wentworth boundary
//! conditions.
//!
//! For Fourier mode `k` the eigenvalues `λ = ¼ + ν²` are the zeros of
//!
//! ```text
//! f_k(ν) = (1 + 4παa) K₊K₋ + x₊ K₊' K₋ + x₋ K₋' K₊,    K± = K_{iν}(x±),  x± = 2π|k ± α|a
//! g_k(ν) = 1 + 4παa + x₊ K₊'/K₊ + x₋ K₋'/K₋            (so f_k = K₊K₋ g_k)
//! ```
//!
//! Along the imaginary axis `ν = it` the order becomes real and everything is
//! real; [`RealOrderMode`] packages that case, which drives the zeta
//! integrals. Mode 0 carries the kernel zero at `t = ½`, which [`mode0`]
//! divides out analytically.

mod asymptotics;
mod bundle;
mod functions;
pub mod mode0;
mod regularizer;

pub use asymptotics::{g_large_argument, log_abs_g_asymptotic, log_abs_g_expansion, LARGE_ARG_G_ENVELOPE, LOG_G_ENVELOPE, LOG_G_MIN_ORDER};
pub use bundle::{CuspBundle, ModeChar, DEFAULT_DELTA};
pub use functions::{
    char_det_direct, char_det_scaled, char_f, char_f0, char_g, g_derivative, g_derivative_lower_integral,
    g_derivative_lower_integral_from, kernel_boundary_function,
    g_derivative_upper_integral, RealOrderMode, ScaledDet, UNIFORM_SWITCH,
};
pub use regularizer::{h_reg, htilde, regularizer_sample, H_reg, RegularizerSample};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CharError {
    #[error("invalid bundle: {0}")]
    Bundle(String),
    #[error("mode k = 0 does not exist for the trivial bundle (α = 0)")]
    TrivialMode,
    #[error("too close to a pole: |K| = {0:e} relative to its scale")]
    PoleProximity(f64),
    #[error("expansion used outside its validity range: {0}")]
    Validity(String),
    #[error(transparent)]
    Special(#[from] specfun::SpecError),
    #[error(transparent)]
    Quadrature(#[from] quadsum::QuadError),
}

pub type Result<T> = std::result::Result<T, CharError>;
