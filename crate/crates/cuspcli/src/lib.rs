//! Command-line front end: spectra, zeta values by both routes, mode-0
//! determinant pieces, asymptotic reports and the verification suite.
//!
//! Every command is a pure function of its [`RunConfig`]; the binary only
//! parses arguments, writes the returned text and maps errors to exit codes.

mod commands;
mod config;
mod report;
pub mod verify;

pub use commands::{cmd_asymptotics, cmd_mode0_det, cmd_spectrum, cmd_verify, cmd_zeta, run, CommandOutput};
pub use config::{delta_admissible, parse_args, Cli, Command, ConfigArgs, Format, RunConfig};
pub use report::{parse_report_json, to_json, AnyReport, SpectrumReport, ZetaReport};
pub use verify::{run_verify, CheckStatus, VerifyReport, VerifySummary};

use thiserror::Error;

/// Environment variable naming the golden-file directory used by `verify`.
pub const GOLDEN_ENV: &str = "CUSP_SPECTRA_GOLDEN";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("output: {0}")]
    Output(String),
}

impl CliError {
    /// Process exit code: 2 for invalid input, 3 for solver or output failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Output(_) => 3,
        }
    }
}

/// Exit code when every command step succeeded but a verification failed.
pub const EXIT_VERIFY_FAILED: i32 = 4;
