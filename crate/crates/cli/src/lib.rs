//! Command-line front end for `cw-glt-core`.
//!
//! Every subcommand produces a [`io::Table`] that is written as CSV (header
//! row, `#`-prefixed `key=value` footer lines) or JSON. Numbers are written
//! with 17 significant digits.

pub mod args;
pub mod commands;
pub mod error;
pub mod fixtures;
pub mod io;

use std::io::Write;

use args::{Cli, Command, Format};
use error::{CliError, CliResult};

/// Runs the parsed command line, writing to `--output` or standard output.
pub fn run(cli: &Cli) -> CliResult<()> {
    let mut out = io::open_output(cli.output.as_deref())?;
    execute(cli, &mut out)?;
    out.flush()?;
    Ok(())
}

/// Runs the parsed command line, writing to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    if cli.fixtures.is_some() && cli.command.is_some() {
        return Err(CliError::usage(
            "--fixtures cannot be combined with a subcommand",
        ));
    }
    if cli.fixtures.is_some() {
        let date = chrono::Utc::now().date_naive().to_string();
        let f = fixtures::Fixtures::generate(date)?;
        let path = cli.fixtures.as_deref().expect("checked");
        let mut file = std::fs::File::create(path)?;
        serde_json::to_writer_pretty(&mut file, &f)?;
        writeln!(file)?;
        return Ok(());
    }
    let Some(command) = &cli.command else {
        return Err(CliError::usage(
            "a subcommand or --fixtures is required (see --help)",
        ));
    };
    commands::check_tol(cli.tol)?;
    let p = commands::params(cli.gamma, cli.bfield)?;
    let (table, default_format) = match command {
        Command::Spectrum { mode, size } => {
            (commands::spectrum(p, *mode, *size, cli.tol)?, Format::Csv)
        }
        Command::Rearrange {
            grid,
            points,
            constant_symbol,
        } => (
            commands::rearrange(p, grid, *points, *constant_symbol)?,
            Format::Csv,
        ),
        Command::Compare { size, grid } => {
            (commands::compare(p, *size, grid, cli.tol)?, Format::Json)
        }
        Command::Extremal {
            sizes,
            min_ref,
            max_ref,
            abs_gaps,
        } => (
            commands::extremal(p, sizes, *min_ref, *max_ref, *abs_gaps)?,
            Format::Csv,
        ),
        Command::Zerodist { sizes, functional } => {
            (commands::zerodist(p, sizes, *functional)?, Format::Csv)
        }
        Command::Nu { size } => (commands::nu(*size)?, Format::Csv),
        Command::Berezin {
            sizes,
            sphere_ntheta,
            sphere_nphi,
        } => (
            commands::berezin(p, sizes, (*sphere_ntheta, *sphere_nphi))?,
            Format::Csv,
        ),
    };
    match cli.format.unwrap_or(default_format) {
        Format::Csv => table.write_csv(out),
        Format::Json => table.write_json(out),
    }
}
