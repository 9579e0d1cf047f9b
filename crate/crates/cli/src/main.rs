use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use cw_glt::args::Cli;

fn report(kind: &str, code: u8, message: &str, json: bool) -> ExitCode {
    if json {
        let v =
            serde_json::json!({ "error": { "kind": kind, "exit_code": code, "message": message } });
        eprintln!("{v}");
    } else {
        eprintln!("error: {message}");
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            if std::env::args().any(|a| a == "--json-errors") {
                let msg = e.to_string();
                let first = msg
                    .lines()
                    .next()
                    .unwrap_or_default()
                    .trim_start_matches("error: ");
                return report("usage", 2, first, true);
            }
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    match cw_glt::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        // A closed downstream pipe (`| head`) is not a failure.
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => report(
            e.kind(),
            e.exit_code() as u8,
            &e.to_string(),
            cli.json_errors,
        ),
    }
}
