//! Special functions for the cusp spectral problem.
//!
//! The centre of gravity is [`bessel`]: the modified Bessel function
//! `K_β(x)` for complex order and positive argument, together with its first
//! two argument derivatives and its order derivative, all from one contour
//! integral. Around it sit the exponential integral, Gamma and polygamma,
//! Riemann and Hurwitz zeta, the Gauss hypergeometric function, and the Olver
//! uniform and Hankel large-argument expansions with remainder envelopes.

pub mod bessel;
pub mod dual;
mod expint;
mod gamma;
pub mod hypergeo;
pub mod large_arg;
pub mod olver;
pub mod uniform;
pub mod zeta;

pub use bessel::{
    bessel_k, bessel_k_all, bessel_k_dorder, bessel_k_dx, bessel_k_dxx, line_integral, BesselConfig, BesselK,
    Scaled,
};
pub use dual::Dual;
pub use expint::{exp_integral_e1, exp_integral_e1_scaled};
pub use gamma::{digamma, gamma, log_gamma, trigamma, EULER_GAMMA};
pub use hypergeo::{hyp2f1, hyp2f1_reflect, hyp2f1_reflect_parts};
pub use large_arg::{bessel_k_large_argument, bessel_kprime_large_argument, LARGE_ARG_ENVELOPE};
pub use olver::{olver_polys, OlverPolynomial};
pub use uniform::{
    bessel_k_uniform, bessel_kprime_uniform, logderiv_uniform, uniform_log_derivative, uniform_log_k,
    LOGDERIV_ENVELOPE,
};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_complex, hurwitz_zeta_ds, zeta_riemann};

use num_complex::Complex64;
use thiserror::Error;

/// A Bessel order `β = re + i·im`.
///
/// The spectral problem is written in terms of `K_{iν}` with `ν` the spectral
/// parameter; [`ComplexOrder::spectral`] performs that rotation so callers do
/// not have to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexOrder {
    pub re: f64,
    pub im: f64,
}

impl ComplexOrder {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub const fn real(t: f64) -> Self {
        Self { re: t, im: 0.0 }
    }

    /// The order `iν` belonging to spectral parameter `ν`.
    pub fn spectral(nu: Complex64) -> Self {
        let b = Complex64::i() * nu;
        Self { re: b.re, im: b.im }
    }

    pub fn as_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl From<Complex64> for ComplexOrder {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<f64> for ComplexOrder {
    fn from(t: f64) -> Self {
        Self::real(t)
    }
}

/// An asymptotic value together with a bound on what was left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionWithBound<T> {
    pub value: T,
    /// Non-negative bound (or calibrated envelope) on `|value − exact|`.
    pub remainder_bound: f64,
    /// Number of expansion terms that went into `value`.
    pub order_used: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("argument {0} outside the domain")]
    Domain(f64),
    #[error("argument {x} below the floor {floor}")]
    ArgumentFloor { x: f64, floor: f64 },
    #[error("|Re order| = {re} exceeds the cap {cap}")]
    OrderCap { re: f64, cap: f64 },
    #[error("requested relative accuracy {requested:e} not reached (best {achieved:e})")]
    Accuracy { requested: f64, achieved: f64 },
    #[error("pole at s = {0}")]
    Pole(f64),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("expansion used outside its validity range: {0}")]
    Validity(String),
    #[error("result overflows double precision (log magnitude {0})")]
    Overflow(f64),
    #[error(transparent)]
    Quadrature(#[from] quadsum::QuadError),
}

pub type Result<T> = std::result::Result<T, SpecError>;
