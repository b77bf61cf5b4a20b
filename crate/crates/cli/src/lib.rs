//! Command-line front end for `hhkit-core`.
//!
//! [`run`] parses arguments, executes the command and writes the report; its
//! return value is the process exit status:
//!
//! * `0`: every check passed (findings and inapplicable bounds included),
//! * `1`: some inequality was falsified,
//! * `2`: invalid input or usage.

pub mod args;
pub mod corpus;
pub mod dispatch;
pub mod report;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Action, Cli};
use report::ReportRecord;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn exit_code(records: &[ReportRecord]) -> i32 {
    if records.iter().any(|r| r.verdict.is_failure()) {
        EXIT_FALSIFIED
    } else {
        EXIT_OK
    }
}

/// Runs one invocation, writing the report to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, env_tol: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let (action, flags) = cli.action.split();
    let result = args::resolve(action, flags, env_tol).and_then(|cmd| {
        let records = dispatch::dispatch(&cmd)?;
        report::render(out, &records, cmd.format, action == Action::Suite)?;
        Ok(records)
    });
    match result {
        Ok(records) => exit_code(&records),
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}
