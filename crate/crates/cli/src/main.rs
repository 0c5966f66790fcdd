use std::process::ExitCode;

use clap::Parser;
use dihom_cli::{exit_code_for, run, Cli, MAX_MATRIX_ENV};

fn apply_env() -> anyhow::Result<()> {
    if let Ok(raw) = std::env::var(MAX_MATRIX_ENV) {
        let cap: usize = raw.trim().parse().map_err(|_| {
            dihom_cli::InputError(format!(
                "{MAX_MATRIX_ENV} must be a positive integer, got `{raw}`"
            ))
        })?;
        dihom_core::exactlin::set_max_matrix_dim(cap);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = apply_env().and_then(|()| {
        let (outcome, format, out) = run(&cli)?;
        dihom_cli::write_output(out.as_deref(), &outcome.render(format))?;
        if !outcome.success {
            if let Some(first) = outcome.report.get("first_failure").and_then(|v| v.as_str()) {
                eprintln!("dihom: failed property `{first}`");
            } else {
                eprintln!("dihom: mathematical check failed");
            }
        }
        Ok(outcome.exit_code())
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("dihom: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
