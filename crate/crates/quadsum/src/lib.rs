//! Numerical integration and regularised summation.
//!
//! The integrators here are the workhorses for everything that needs a
//! definite integral: tanh-sinh on finite intervals, exp-sinh on half lines,
//! and a composite Gauss-Legendre rule that serves as an independent second
//! scheme for cross-checks. The [`ramanujan`] module builds the Ramanujan
//! summation operator on top of them.

mod de;
mod gauss;
pub mod ramanujan;

pub use de::{integrate, integrate_real, integrate_to, Bound};
pub use gauss::{gauss_legendre, gauss_legendre_nodes};
pub use ramanujan::{ramanujan_hypotheses_check, ramanujan_sum, HypothesesReport, RamanujanSum};

use num_complex::Complex64;
use thiserror::Error;

/// Outcome of a quadrature call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    /// Difference between the last two refinement levels. Always non-negative.
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("quadrature did not converge: last estimate {estimate:e} after {evaluations} evaluations (requested tol {tol:e})")]
    NonConvergence { estimate: f64, evaluations: usize, tol: f64 },
    #[error("integrand returned a non-finite value at x = {at}")]
    NonFinite { at: f64 },
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),
}

pub type Result<T> = std::result::Result<T, QuadError>;

pub(crate) fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
