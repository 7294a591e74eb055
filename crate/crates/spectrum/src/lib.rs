//! Eigenvalues `λ = ¼ + r²` of the cusp Laplacian with Alvarez-Wentworth
//! boundary conditions.
//!
//! Each Fourier mode is scanned along the real spectral axis for sign
//! changes of its determinant, the sign changes are bisected, and the counts
//! are cross-checked with the argument principle. The kernel eigenvalue
//! `λ = 0` (spectral parameter `i/2` of mode 0) is inserted exactly.

mod argument;
mod csvio;
mod slice;
mod zeros;

pub use argument::{argument_principle_count, argument_principle_value, Rect};
pub use csvio::{parse_spectrum_csv, write_spectrum_csv, CSV_HEADER};
pub use slice::{counting_function, enumerate_eigenvalues, enumerate_eigenvalues_with, heuristic_cutoff, weyl_constant, weyl_ratio};
pub use zeros::{find_mode_zeros, find_mode_zeros_with, mode0_zero_structure};

use charfn::{CharError, CuspBundle};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One eigenvalue. `j = 0` marks the kernel element `λ = 0`, whose spectral
/// parameter is `i/2`; it is stored with `r = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenRecord {
    pub k: i64,
    pub j: u32,
    pub r: f64,
    pub lambda: f64,
    /// `|f_k(r)|` relative to the sum of its term moduli.
    pub residual: f64,
}

/// All eigenvalues up to `lambda_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSlice {
    pub bundle: CuspBundle,
    pub lambda_max: f64,
    /// Sorted by `λ`, then `k`, then `j`.
    pub records: Vec<EigenRecord>,
    pub kernel_present: bool,
    pub k_cutoff_used: i64,
    pub warnings: Vec<String>,
}

/// Solver knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumConfig {
    /// Largest scan step in `r`.
    pub max_step: f64,
    /// Halvings allowed when a cell looks like it hides two crossings.
    pub max_refine_depth: u32,
    /// Largest relative residual accepted at a reported zero.
    pub residual_tol: f64,
    /// Largest `|k|` the automatic cutoff may reach.
    pub k_hard_limit: i64,
    /// Scan at least the modes `|k| ≤ k_cutoff_floor`.
    pub k_cutoff_floor: i64,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self { max_step: 0.05, max_refine_depth: 12, residual_tol: 1e-6, k_hard_limit: 400, k_cutoff_floor: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("scan could not resolve the zeros near r = {0}")]
    ScanResolution(f64),
    #[error("zero at r = {r} has residual {residual:e} above {tol:e}")]
    Residual { r: f64, residual: f64, tol: f64 },
    #[error("contour passes within {0:e} (relative) of a zero")]
    BoundaryZero(f64),
    #[error("argument-principle value {0} is not within 0.1 of an integer")]
    RoundingGap(f64),
    #[error("rectangle height {0} exceeds 1")]
    RectHeight(f64),
    #[error("cutoff verification failed up to |k| = {0}")]
    Cutoff(i64),
    #[error("lambda = {lambda} outside the slice (lambda_max = {lambda_max})")]
    Range { lambda: f64, lambda_max: f64 },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("csv: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, SpectrumError>;
