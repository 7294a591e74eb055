//! Serialized report types and JSON helpers.

use crate::verify::VerifySummary;
use crate::CliError;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use spectrum::{EigenRecord, SpectrumSlice};
use zetadet::{complex_serde, AsympReport, Mode0DetPieces};

/// JSON form of a spectrum slice; the records mirror the CSV columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumReport {
    pub alpha: f64,
    pub a: f64,
    pub lambda_max: f64,
    pub tol: f64,
    pub kernel_present: bool,
    pub k_cutoff_used: i64,
    pub warnings: Vec<String>,
    pub records: Vec<EigenRecord>,
}

impl SpectrumReport {
    pub fn new(slice: &SpectrumSlice, tol: f64) -> Self {
        Self {
            alpha: slice.bundle.alpha,
            a: slice.bundle.a,
            lambda_max: slice.lambda_max,
            tol,
            kernel_present: slice.kernel_present,
            k_cutoff_used: slice.k_cutoff_used,
            warnings: slice.warnings.clone(),
            records: slice.records.clone(),
        }
    }
}

/// Both zeta routes at one point with their agreement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZetaReport {
    pub alpha: f64,
    pub a: f64,
    pub mu: f64,
    #[serde(with = "complex_serde")]
    pub s: Complex64,
    pub lambda_max: f64,
    pub k_max: u32,
    #[serde(with = "complex_serde")]
    pub value_direct: Complex64,
    #[serde(with = "complex_serde")]
    pub value_integral: Complex64,
    pub estimate_direct: f64,
    pub estimate_integral: f64,
    pub abs_diff: f64,
    pub combined_estimate: f64,
}

/// Any report the CLI emits as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyReport {
    Spectrum(SpectrumReport),
    Zeta(ZetaReport),
    Mode0(Mode0DetPieces),
    Asymptotics(AsympReport),
    Verify(VerifySummary),
}

/// Pretty JSON with a trailing newline. Floats are written in their
/// shortest form that parses back to the same bits.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Parse any CLI JSON report.
pub fn parse_report_json(text: &str) -> Result<AnyReport, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Output(e.to_string()))
}
