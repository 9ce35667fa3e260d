//! Batch front end for `zpf-core`: configuration, deterministic runs and
//! CSV/JSON output for every module, plus the acceptance suite.

pub mod checks;
pub mod commands;
pub mod config;
pub mod emit;
pub mod error;
pub mod report;

pub use config::{parse_config, Command, RunConfig};
pub use error::{CliError, Result};
pub use report::{Check, Criterion, RunReport};

use std::time::Instant;

/// Runs the configured command, writes its data file (or standard output)
/// and its report, and returns the report.
pub fn run(cfg: &RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    let outcome = commands::execute(cfg)?;
    let output = cfg.resolved_output();
    emit::emit(&emit::Metadata::for_config(cfg), &outcome.table, cfg.format, output.as_deref())?;
    let report = RunReport {
        command: cfg.command,
        config: cfg.clone(),
        passed: outcome.checks.iter().all(|c| c.passed),
        checks: outcome.checks,
        criteria: outcome.criteria,
        wall_time_s: start.elapsed().as_secs_f64(),
        output,
    };
    if let Some(path) = cfg.resolved_report() {
        let mut bytes = serde_json::to_vec_pretty(&report).map_err(|e| CliError::Serialize(e.to_string()))?;
        bytes.push(b'\n');
        emit::write_atomic(&path, &bytes)?;
    }
    Ok(report)
}
