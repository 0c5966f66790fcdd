//! Library side of the `dihom` command-line tool: argument types, the four
//! report commands and the self-test suite. `main` only parses arguments,
//! applies the environment and maps outcomes to exit codes.

pub mod args;
mod commands;
mod load;
mod output;
mod selftest;

use std::fmt;

use serde_json::{Map, Value};

pub use args::{Cli, Command, Format, JobArgs, SelftestArgs};
pub use commands::{algebra, homology, relative, validate};
pub use output::write as write_output;
pub use selftest::{selftest, Check};

/// Environment variable overriding the Smith-normal-form size cap.
pub const MAX_MATRIX_ENV: &str = "DIHOM_MAX_MATRIX";

/// A rendered report plus whether every mathematical check passed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Map<String, Value>,
    pub text: Vec<String>,
    pub success: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.success {
            0
        } else {
            1
        }
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&Value::Object(self.report.clone()))
            .expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Text => {
                let mut s = self.text.join("\n");
                s.push('\n');
                s
            }
        }
    }
}

/// Bad invocation: arguments that do not fit the input.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// 2 for unreadable or malformed input and bad arguments, 1 otherwise.
pub fn exit_code_for(err: &anyhow::Error) -> u8 {
    use dihom_core::Error as E;
    for cause in err.chain() {
        if cause.is::<InputError>()
            || cause.is::<std::io::Error>()
            || cause.is::<serde_json::Error>()
        {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::Schema(_)
                | E::Builder(_)
                | E::UnknownObject(_)
                | E::Truncation { .. }
                | E::MatrixTooLarge { .. } => 2,
                _ => 1,
            };
        }
    }
    1
}

/// Runs one parsed invocation and returns the rendered outcome.
pub fn run(cli: &Cli) -> anyhow::Result<(Outcome, Format, Option<std::path::PathBuf>)> {
    Ok(match &cli.command {
        Command::Validate(job) => (validate(job)?, job.format, job.out.clone()),
        Command::Homology(job) => (homology(job)?, job.format, job.out.clone()),
        Command::Relative(job) => (relative(job)?, job.format, job.out.clone()),
        Command::Algebra(job) => (algebra(job)?, job.format, job.out.clone()),
        Command::Selftest(args) => (selftest(args)?, args.format, args.out.clone()),
    })
}
