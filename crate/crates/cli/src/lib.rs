//! Batch front end: reads a TOML run configuration, evaluates the pipeline
//! for each rapidity and writes a TOML report plus optional CSV exports.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod pipeline;

use std::path::{Path, PathBuf};

pub use config::{apply_overrides, load, validate, Command, ConfigFile, Overrides, RunConfig};
pub use error::{CliError, Violation};
pub use pipeline::{run, Outcome, Record, RunReport};

/// Loads, overrides and validates. Relative paths resolve against the
/// config file's directory; callers should make `--out` absolute.
pub fn prepare(
    config_path: &Path,
    overrides: &Overrides,
    command: Command,
) -> Result<RunConfig, CliError> {
    let mut cfg = load(config_path)?;
    let mut violations = apply_overrides(&mut cfg, overrides);
    match validate(&cfg, command, &base_dir(config_path)) {
        Ok(run) if violations.is_empty() => Ok(run),
        Ok(_) => Err(CliError::Config(violations)),
        Err(v) => {
            violations.extend(v);
            Err(CliError::Config(violations))
        }
    }
}

/// Every problem with the config; empty when it is valid. Touches no files
/// except for reading inputs.
pub fn check(config_path: &Path, overrides: &Overrides) -> Vec<Violation> {
    match prepare(config_path, overrides, Command::Check) {
        Ok(_) => Vec::new(),
        Err(CliError::Config(v)) => v,
        Err(e) => vec![Violation::new("config", e.to_string())],
    }
}

/// Validates, runs and writes outputs. Returns the report text, or `None`
/// once it has been written to the configured report path.
pub fn execute(
    config_path: &Path,
    overrides: &Overrides,
    command: Command,
) -> Result<Option<String>, CliError> {
    let cfg = prepare(config_path, overrides, command)?;
    let outcome = run(&cfg)?;
    let text = pipeline::emit(&cfg, &outcome, &base_dir(config_path))?;
    Ok(cfg.output.report.is_none().then_some(text))
}

fn base_dir(config_path: &Path) -> PathBuf {
    config_path
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_default()
}
