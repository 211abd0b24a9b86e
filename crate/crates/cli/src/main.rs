use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use sliceregular_cli::commands::{Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.execute() {
        Ok(outcome) => outcome,
        Err(e) => {
            eprint!("{}", e.to_json());
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        let e = CliError::from(e);
        eprint!("{}", e.to_json());
        return ExitCode::from(e.exit_code() as u8);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
