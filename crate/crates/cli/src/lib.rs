//! Command-line verifier for SqK spinors on three-dimensional Sasakian
//! space-forms.
//!
//! `sqk verify` runs the check registry and emits a JSON report, `sqk tables`
//! reproduces the closedness and energy-condition tables, `sqk simulate`
//! integrates charged orbits and Dirac-current flows, and `sqk edm` prints a
//! certificate for one Einstein-Dirac-Maxwell solution.

pub mod checks;
pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

pub use commands::{Cli, Command};

/// Exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const IO: i32 = 3;
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use clap::Parser;
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { exit::USAGE } else { exit::PASS };
        }
    };
    let env = std::env::var_os("SQK_CONFIG");
    commands::execute(&cli, env.as_deref().map(std::path::Path::new), out, err)
}
