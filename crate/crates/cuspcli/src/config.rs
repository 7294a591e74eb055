//! Command-line arguments and their validation into a [`RunConfig`].

use crate::CliError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use zetadet::TheoremId;

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "cuspcli", version, about = "Spectra, zeta values and determinants of the cusp Laplacian")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub args: ConfigArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Eigenvalues up to --lambda-max.
    Spectrum,
    /// ζ(s) by both routes with their agreement.
    Zeta,
    /// Exact mode-0 determinant pieces at --mu.
    #[command(name = "mode0-det")]
    Mode0Det,
    /// Term values of one asymptotic expansion (--theorem).
    Asymptotics,
    /// The full verification suite.
    Verify,
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Holonomy α ∈ [0, 1).
    #[arg(long, global = true, default_value_t = 0.3, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Cusp height a > 0.
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a: f64,
    /// Spectral shift μ ≥ 0.
    #[arg(long, global = true, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, global = true, default_value_t = 400.0, allow_negative_numbers = true)]
    pub lambda_max: f64,
    /// Modes summed explicitly by the integral route.
    #[arg(long, global = true, default_value_t = 24, allow_negative_numbers = true)]
    pub k_max: i64,
    #[arg(long, global = true, default_value_t = 1.5, allow_negative_numbers = true)]
    pub s_re: f64,
    #[arg(long, global = true, default_value_t = 0.0, allow_negative_numbers = true)]
    pub s_im: f64,
    /// Eigenvalue tolerance.
    #[arg(long, global = true, default_value_t = 1e-10, allow_negative_numbers = true)]
    pub tol: f64,
    /// Splitting exponent δ < 1/6 with 1/(2δ) not an integer.
    #[arg(long, global = true, default_value_t = charfn::DEFAULT_DELTA, allow_negative_numbers = true)]
    pub delta: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// mu-alpha, mu-alpha0, a-alpha or a-alpha0.
    #[arg(long, global = true)]
    pub theorem: Option<String>,
}

/// Validated parameters of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub alpha: f64,
    pub a: f64,
    pub mu: f64,
    pub lambda_max: f64,
    pub k_max: u32,
    pub s_re: f64,
    pub s_im: f64,
    pub tol: f64,
    pub delta: f64,
    pub format: Format,
    pub out_path: Option<PathBuf>,
    pub theorem: Option<TheoremId>,
    /// Output never depends on clocks, seeds or locale.
    pub deterministic: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha: 0.3,
            a: 1.0,
            mu: 0.0,
            lambda_max: 400.0,
            k_max: 24,
            s_re: 1.5,
            s_im: 0.0,
            tol: 1e-10,
            delta: charfn::DEFAULT_DELTA,
            format: Format::Json,
            out_path: None,
            theorem: None,
            deterministic: true,
        }
    }
}

fn invalid(msg: String) -> CliError {
    CliError::Config(msg)
}

fn finite(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(format!("--{name} must be finite, got {x}")))
    }
}

/// Whether `δ` is admissible: `0 < δ < 1/6` and `1/(2δ)` not an integer.
pub fn delta_admissible(delta: f64) -> bool {
    if !(delta > 0.0 && delta < 1.0 / 6.0) {
        return false;
    }
    let q = 1.0 / (2.0 * delta);
    (q - q.round()).abs() > 1e-9 * q
}

impl TryFrom<ConfigArgs> for RunConfig {
    type Error = CliError;

    fn try_from(c: ConfigArgs) -> Result<Self, CliError> {
        let alpha = finite("alpha", c.alpha)?;
        if !(0.0..1.0).contains(&alpha) {
            return Err(invalid(format!("--alpha = {alpha} must lie in [0, 1)")));
        }
        let a = finite("a", c.a)?;
        if a <= 0.0 {
            return Err(invalid(format!("--a = {a} must be positive")));
        }
        let mu = finite("mu", c.mu)?;
        if mu < 0.0 {
            return Err(invalid(format!("--mu = {mu} must be non-negative")));
        }
        let lambda_max = finite("lambda-max", c.lambda_max)?;
        if lambda_max < 0.0 {
            return Err(invalid(format!("--lambda-max = {lambda_max} must be non-negative")));
        }
        if !(1..=100_000).contains(&c.k_max) {
            return Err(invalid(format!("--k-max = {} must lie in [1, 100000]", c.k_max)));
        }
        let s_re = finite("s-re", c.s_re)?;
        let s_im = finite("s-im", c.s_im)?;
        let tol = finite("tol", c.tol)?;
        if !(tol > 0.0 && tol <= 1e-4) {
            return Err(invalid(format!("--tol = {tol} must lie in (0, 1e-4]")));
        }
        let delta = finite("delta", c.delta)?;
        if !delta_admissible(delta) {
            return Err(invalid(format!("--delta = {delta} must satisfy 0 < δ < 1/6 with 1/(2δ) not an integer")));
        }
        let theorem = c.theorem.as_deref().map(str::parse::<TheoremId>).transpose().map_err(|e| invalid(e.to_string()))?;
        Ok(Self {
            alpha,
            a,
            mu,
            lambda_max,
            k_max: c.k_max as u32,
            s_re,
            s_im,
            tol,
            delta,
            format: c.format,
            out_path: c.out,
            theorem,
            deterministic: true,
        })
    }
}

/// Parse a full argument vector (program name first) into a command and
/// its validated configuration.
pub fn parse_args<I, T>(args: I) -> Result<(Command, RunConfig), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok((cli.command, RunConfig::try_from(cli.args)?))
}
