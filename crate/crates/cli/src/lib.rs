//! Scenario-driven front end for the `cptq` simulator.

pub mod catalog;
pub mod config;
mod error;
pub mod outcome;
pub mod run;

use std::path::{Path, PathBuf};

pub use config::{Kind, Params, Scenario};
pub use error::{CliError, CliResult};
pub use outcome::{FinalState, HygieneSummary, Outcome, Table};
pub use run::{run_scenario, run_scenario_with, Context};

/// Output directory for a config: `--out` wins (one subdirectory per config
/// in batch mode), then the config's `output_dir`, then `out/<stem>`.
pub fn output_dir(config_path: &Path, scenario: &Scenario, cli_out: Option<&Path>, batch: bool) -> PathBuf {
    let stem = config_path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "scenario".into());
    match (cli_out, &scenario.output_dir) {
        (Some(out), _) if batch => out.join(stem),
        (Some(out), _) => out.to_path_buf(),
        (None, Some(dir)) => PathBuf::from(dir),
        (None, None) => PathBuf::from("out").join(stem),
    }
}

/// Status of one config in a batch.
#[derive(Debug)]
pub struct RunReport {
    pub config: PathBuf,
    pub output: Option<PathBuf>,
    pub exit_code: u8,
    pub message: String,
}

/// Loads, runs and writes one config.
pub fn execute(config_path: &Path, overrides: &[String], cli_out: Option<&Path>, force_reproducible: bool, batch: bool) -> RunReport {
    let fail = |e: CliError, output: Option<PathBuf>| RunReport {
        config: config_path.to_path_buf(),
        output,
        exit_code: e.exit_code(),
        message: e.to_string(),
    };
    let mut scenario = match Scenario::load(config_path, overrides) {
        Ok(s) => s,
        Err(e) => return fail(e, None),
    };
    if force_reproducible {
        scenario.reproducible = true;
    }
    let dir = output_dir(config_path, &scenario, cli_out, batch);
    let outcome = match run_scenario(&scenario) {
        Ok(o) => o,
        Err(e) => return fail(e, None),
    };
    if let Err(e) = outcome.write(&dir) {
        return fail(e, Some(dir));
    }
    let mut message = format!("{} -> {}", scenario.kind.name(), dir.display());
    if let Some(line) = outcome.result("sanity_line").and_then(|v| v.as_str()) {
        message.push_str(&format!("\n  {line}"));
    }
    for w in &outcome.warnings {
        message.push_str(&format!("\n  warning: {w}"));
    }
    match &outcome.failure {
        Some(f) => RunReport {
            config: config_path.to_path_buf(),
            output: Some(dir),
            exit_code: 2,
            message: format!("{message}\n  numerical failure: {f}"),
        },
        None => RunReport {
            config: config_path.to_path_buf(),
            output: Some(dir),
            exit_code: 0,
            message,
        },
    }
}
