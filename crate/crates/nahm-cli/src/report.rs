//! Structured reports shared by every subcommand.

use nahm_exact::Rational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Relation between a report and the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    HypothesesNotMet,
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::HypothesesNotMet => 2,
            Status::Failed => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub status: Status,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    /// Hypothesis lines such as `gcd(n1,d1)=1 ✓`.
    pub checklist: Vec<String>,
    /// Claims backing the reported verdicts.
    pub citations: Vec<String>,
    /// Human-readable lines for the text format.
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            status: Status::Ok,
            inputs: Map::new(),
            results: Map::new(),
            checklist: Vec::new(),
            citations: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.summary.push(s.into());
        self
    }

    pub fn cite(&mut self, s: &str) -> &mut Self {
        self.citations.push(s.to_string());
        self
    }
}

/// Exact rational as `"p/q"` (or `"p"` for integers).
pub fn rational(r: Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rationals(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(|r| rational(*r)).collect())
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("invalid rational {s:?}: {e}"))
}

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// A floating point claim with its tolerance.
pub fn measured(value: f64, tolerance: f64) -> Value {
    json!({ "value": float(value), "tolerance": float(tolerance) })
}

/// Floats that are not finite are rendered as strings.
pub fn float(x: f64) -> Value {
    if x.is_finite() {
        json!(sig12(x))
    } else {
        Value::String(x.to_string())
    }
}

pub fn set_display(rs: &[Rational]) -> String {
    if rs.is_empty() {
        return "∅".into();
    }
    let parts: Vec<String> = rs.iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}
