mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use minsurf::Error;
use serde_json::json;

use crate::args::Cli;

fn error_json(kind: &str, message: &str) -> String {
    output::to_json(&json!({
        "schema_version": output::SCHEMA_VERSION,
        "error": { "kind": kind, "message": message },
    }))
}

/// Numerical failures exit 1; bad input exits 2.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PathDependent { .. } | Error::GradientEstimate(_) | Error::NonFinite(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            print!("{}", error_json("usage", e.to_string().trim()));
            return ExitCode::from(2);
        }
    };
    let result = commands::run(cli.command)
        .and_then(|(outcome, out)| commands::write_output(&outcome.text, out.as_deref()).map(|()| outcome.code));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            print!("{}", error_json(e.kind(), &e.to_string()));
            ExitCode::from(exit_code(&e))
        }
    }
}
