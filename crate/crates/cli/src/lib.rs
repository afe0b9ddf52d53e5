//! Command-line front end for `corquad`.
//!
//! [`run`] parses arguments, executes one subcommand and writes its report to
//! `out`; diagnostics go to `err`. The returned exit code is 0 on success, 1
//! for usage errors (bad flags, unparsable expressions, inconsistent input)
//! and 2 when evaluation or the reference integration fails.

pub mod args;
mod commands;
pub mod output;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Evaluation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Evaluation(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Evaluation(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<corquad::Error> for CliError {
    fn from(e: corquad::Error) -> Self {
        use corquad::Error as E;
        match e {
            E::Evaluation { .. } | E::Domain { .. } | E::Convergence { .. } | E::Capability { .. } => {
                CliError::Evaluation(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Run the CLI on `args` (program name first) and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Integrate(a) => commands::integrate_cmd(a),
        Command::Bounds(a) => commands::bounds_cmd(a),
        Command::Kernel(a) => commands::kernel_cmd(a),
        Command::Converge(a) => commands::converge_cmd(a),
        Command::Compare(a) => commands::compare_cmd(a),
    };
    match result {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: writing output: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
