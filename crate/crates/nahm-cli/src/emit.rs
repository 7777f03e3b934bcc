//! Serialization of reports.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;

use crate::error::CliError;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// `heatmap` is the curvature CSV, the only payload with a CSV rendering.
pub fn emit(report: &Report, format: Format, heatmap: Option<&str>) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => heatmap
            .map(str::to_string)
            .ok_or_else(|| CliError::UnsupportedFormat(format!("csv is only available for curvature maps, not {}", report.command))),
        Format::Text => Ok(text(report)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(m) if m.contains_key("value") && m.contains_key("tolerance") => {
            format!("{} ± {}", scalar(&m["value"]), scalar(&m["tolerance"]))
        }
        other => other.to_string(),
    }
}

fn text(report: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", report.command);
    if !report.inputs.is_empty() {
        let parts: Vec<String> = report.inputs.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect();
        let _ = writeln!(s, "  inputs: {}", parts.join(" "));
    }
    for line in &report.summary {
        let _ = writeln!(s, "{line}");
    }
    if !report.checklist.is_empty() {
        let _ = writeln!(s, "hypotheses:");
        for c in &report.checklist {
            let _ = writeln!(s, "  {c}");
        }
    }
    if !report.citations.is_empty() {
        let _ = writeln!(s, "claims used:");
        for c in &report.citations {
            let _ = writeln!(s, "  - {c}");
        }
    }
    s
}
