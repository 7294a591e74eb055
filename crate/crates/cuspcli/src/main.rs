use clap::error::ErrorKind;
use clap::Parser;
use cuspcli::{run, Cli, RunConfig, EXIT_VERIFY_FAILED};
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(2);
        }
    };
    let cfg = match RunConfig::try_from(cli.args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let out = match run(cli.command, &cfg) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &cfg.out_path {
        Some(path) => std::fs::write(path, &out.text),
        None => std::io::stdout().lock().write_all(out.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: output: {e}");
        return ExitCode::from(3);
    }
    if out.verification_failed {
        eprintln!("verification failed");
        return ExitCode::from(EXIT_VERIFY_FAILED as u8);
    }
    ExitCode::SUCCESS
}
