//! Structured run reports.
//!
//! Reports serialize to JSON; with `--out` they are appended to the target
//! file one compact JSON object per line, which keeps report files
//! append-only and diffable. All fields except `wall_clock_ms` are
//! deterministic functions of the command, configuration, and seed.

use crate::config::RunConfig;
use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use std::io::Write;
use std::time::Instant;

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<CheckLine>,
    pub wall_clock_ms: u128,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub struct ReportBuilder {
    command: String,
    config: RunConfig,
    inputs: Value,
    outputs: Value,
    checks: Vec<CheckLine>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(command: impl Into<String>, config: &RunConfig) -> Self {
        ReportBuilder {
            command: command.into(),
            config: config.clone(),
            inputs: Value::Null,
            outputs: Value::Null,
            checks: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn inputs(&mut self, v: impl Serialize) -> &mut Self {
        self.inputs = serde_json::to_value(v).expect("inputs serialize");
        self
    }

    pub fn outputs(&mut self, v: impl Serialize) -> &mut Self {
        self.outputs = serde_json::to_value(v).expect("outputs serialize");
        self
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) -> &mut Self {
        self.checks.push(CheckLine {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
        self
    }

    pub fn finish(self) -> Report {
        Report {
            command: self.command,
            config: self.config,
            inputs: self.inputs,
            outputs: self.outputs,
            checks: self.checks,
            wall_clock_ms: self.started.elapsed().as_millis(),
        }
    }
}

/// Print the report (pretty on stdout) and append it compactly to the
/// configured sink, if any. Returns whether all checks passed.
pub fn emit(report: &Report) -> Result<bool> {
    println!(
        "{}",
        serde_json::to_string_pretty(report).context("report serialization")?
    );
    if let Some(path) = &report.config.out {
        let mut file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("cannot open report sink {}", path.display()))?;
        writeln!(file, "{}", serde_json::to_string(report)?)?;
    }
    Ok(report.all_pass())
}

/// Write spectrum or bounds rows as CSV.
pub fn write_csv(path: &std::path::Path, header: &str, rows: &[String]) -> Result<()> {
    let mut out = String::with_capacity(rows.len() * 32 + header.len() + 1);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(row);
        out.push('\n');
    }
    std::fs::write(path, out).with_context(|| format!("cannot write CSV {}", path.display()))
}
