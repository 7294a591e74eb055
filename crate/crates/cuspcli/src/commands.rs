//! The five commands. Each returns the text to write and whether the run
//! counts as a verification failure.

use crate::config::{Command, Format, RunConfig};
use crate::report::{to_json, SpectrumReport, ZetaReport};
use crate::verify::{run_verify, verify_csv, VerifySummary};
use crate::CliError;
use charfn::CuspBundle;
use num_complex::Complex64;
use spectrum::{enumerate_eigenvalues, write_spectrum_csv};
use zetadet::{
    asymptotic_logdet_a, asymptotic_logdet_a_alpha0, asymptotic_logdet_mu, asymptotic_logdet_mu_alpha0, mode0_aw_logdet_derivative,
    zeta_direct, zeta_integral, TheoremId, ZetaError,
};

/// Text produced by a command.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub text: String,
    /// Set by `verify` when at least one check failed.
    pub verification_failed: bool,
}

impl CommandOutput {
    fn data(text: String) -> Self {
        Self { text, verification_failed: false }
    }
}

/// Dispatch one command.
pub fn run(command: Command, cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    match command {
        Command::Spectrum => cmd_spectrum(cfg).map(CommandOutput::data),
        Command::Zeta => cmd_zeta(cfg).map(CommandOutput::data),
        Command::Mode0Det => cmd_mode0_det(cfg).map(CommandOutput::data),
        Command::Asymptotics => cmd_asymptotics(cfg).map(CommandOutput::data),
        Command::Verify => cmd_verify(cfg),
    }
}

fn bundle(cfg: &RunConfig) -> Result<CuspBundle, CliError> {
    CuspBundle::new(cfg.alpha, cfg.a).map_err(|e| CliError::Config(e.to_string()))
}

fn zeta_error(e: ZetaError) -> CliError {
    match e {
        ZetaError::Divergent(_) | ZetaError::Strip(_) | ZetaError::InsufficientSlice(_) | ZetaError::Parameter(_) => {
            CliError::Config(e.to_string())
        }
        _ => CliError::Compute(e.to_string()),
    }
}

fn json_only(cfg: &RunConfig, what: &str) -> Result<(), CliError> {
    match cfg.format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Config(format!("{what} reports are JSON only; use --format json"))),
    }
}

/// Eigenvalues up to `λ_max` as CSV (`k,j,r,lambda,residual`) or JSON.
pub fn cmd_spectrum(cfg: &RunConfig) -> Result<String, CliError> {
    let b = bundle(cfg)?;
    let slice = enumerate_eigenvalues(&b, cfg.lambda_max, cfg.tol).map_err(|e| CliError::Compute(e.to_string()))?;
    match cfg.format {
        Format::Csv => write_spectrum_csv(&slice.records).map_err(|e| CliError::Output(e.to_string())),
        Format::Json => to_json(&SpectrumReport::new(&slice, cfg.tol)),
    }
}

/// The zeta report for one configuration, shared with `verify`.
pub(crate) fn zeta_report(cfg: &RunConfig) -> Result<ZetaReport, CliError> {
    if !(cfg.s_re > 1.0 && cfg.s_re < 2.0) {
        return Err(CliError::Config(format!("strip violation: Re s = {} must satisfy 1 < Re s < 2", cfg.s_re)));
    }
    if cfg.lambda_max < 50.0 {
        return Err(CliError::Config(format!("--lambda-max = {} is below 50, too small for the direct route", cfg.lambda_max)));
    }
    let b = bundle(cfg)?;
    let s = Complex64::new(cfg.s_re, cfg.s_im);
    let integral = zeta_integral(s, cfg.mu, &b, cfg.k_max).map_err(zeta_error)?;
    let slice = enumerate_eigenvalues(&b, cfg.lambda_max, cfg.tol).map_err(|e| CliError::Compute(e.to_string()))?;
    let direct = zeta_direct(s, cfg.mu, &slice).map_err(zeta_error)?;
    Ok(ZetaReport {
        alpha: cfg.alpha,
        a: cfg.a,
        mu: cfg.mu,
        s,
        lambda_max: cfg.lambda_max,
        k_max: cfg.k_max,
        value_direct: direct.value,
        value_integral: integral.value,
        estimate_direct: direct.truncation_estimate,
        estimate_integral: integral.truncation_estimate,
        abs_diff: (direct.value - integral.value).norm(),
        combined_estimate: direct.truncation_estimate + integral.truncation_estimate,
    })
}

/// `ζ(s)` by direct summation and by the integral representation.
pub fn cmd_zeta(cfg: &RunConfig) -> Result<String, CliError> {
    json_only(cfg, "zeta")?;
    to_json(&zeta_report(cfg)?)
}

/// Exact mode-0 determinant pieces at `μ > 0`.
pub fn cmd_mode0_det(cfg: &RunConfig) -> Result<String, CliError> {
    json_only(cfg, "mode-0")?;
    if cfg.alpha == 0.0 {
        return Err(CliError::Config(
            "mode 0 is excluded for the trivial character (α = 0): the pseudo-Laplacian drops the constant Fourier coefficient".into(),
        ));
    }
    if cfg.mu <= 0.0 {
        return Err(CliError::Config(format!("--mu = {} must be positive for the mode-0 determinant", cfg.mu)));
    }
    let b = bundle(cfg)?;
    to_json(&mode0_aw_logdet_derivative(cfg.mu, &b).map_err(zeta_error)?)
}

/// Labelled terms of the expansion chosen by `--theorem`.
pub fn cmd_asymptotics(cfg: &RunConfig) -> Result<String, CliError> {
    json_only(cfg, "asymptotics")?;
    let theorem = cfg
        .theorem
        .ok_or_else(|| CliError::Config("--theorem is required: mu-alpha, mu-alpha0, a-alpha or a-alpha0".into()))?;
    let trivial_only = |name: &str| -> Result<(), CliError> {
        if cfg.alpha != 0.0 {
            return Err(CliError::Config(format!("{name} is the α = 0 expansion; got --alpha {}", cfg.alpha)));
        }
        Ok(())
    };
    let report = match theorem {
        TheoremId::MuAlpha => asymptotic_logdet_mu(cfg.alpha, cfg.a, cfg.mu),
        TheoremId::MuAlpha0 => {
            trivial_only("mu-alpha0")?;
            asymptotic_logdet_mu_alpha0(cfg.a, cfg.mu)
        }
        TheoremId::AAlpha => asymptotic_logdet_a(cfg.alpha, cfg.a),
        TheoremId::AAlpha0 => {
            trivial_only("a-alpha0")?;
            asymptotic_logdet_a_alpha0(cfg.a)
        }
    }
    .map_err(zeta_error)?;
    to_json(&report)
}

/// Every check of the suite; the output is written even when checks fail.
pub fn cmd_verify(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let reports = run_verify(cfg);
    let summary = VerifySummary::new(reports);
    let failed = summary.failed > 0;
    let text = match cfg.format {
        Format::Json => to_json(&summary)?,
        Format::Csv => verify_csv(&summary.reports)?,
    };
    Ok(CommandOutput { text, verification_failed: failed })
}
