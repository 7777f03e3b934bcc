//! Command line definition and `--config` merging.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nahm_exact::Rational;
use serde_json::Value;

use crate::emit::Format;
use crate::error::CliError;
use crate::report::parse_rational;

#[derive(Debug, Parser)]
#[command(name = "nahm", version, about = "Fourier-Mukai and Nahm transforms on elliptic curves")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON object whose keys mirror long flags; flags given on the command
    /// line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct TypeArgs {
    pub n1: i64,
    pub n2: i64,
    pub d1: i64,
    pub d2: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Small,
    Large,
    EqualRanks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Link,
    Affine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Dense,
    Chain,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transform of a bundle class given as `RANK DEGREE` pairs; one pair is
    /// read as a semistable bundle, several as a polystable sum.
    #[command(allow_negative_numbers = true)]
    FmClass {
        #[arg(required = true, num_args = 2..)]
        pairs: Vec<i64>,
    },
    /// α-window and candidate chambers of a triple type.
    #[command(allow_negative_numbers = true)]
    AlphaWindow {
        #[command(flatten)]
        t: TypeArgs,
        /// Scan cap for unbounded windows (n1 = n2).
        #[arg(long, value_parser = rational_arg)]
        cap: Option<Rational>,
        /// Locate this parameter among the chambers.
        #[arg(long, value_parser = rational_arg)]
        alpha: Option<Rational>,
    },
    /// Candidate critical values inside the α-window.
    #[command(allow_negative_numbers = true)]
    CriticalValues {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_parser = rational_arg)]
        cap: Option<Rational>,
    },
    /// Componentwise transform of an IT triple type.
    #[command(allow_negative_numbers = true)]
    TransformTriple {
        #[command(flatten)]
        t: TypeArgs,
    },
    /// Preservation criterion for a triple type.
    #[command(allow_negative_numbers = true)]
    CheckPreservation {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_enum)]
        regime: RegimeArg,
        /// Also require this parameter to lie in the regime's chamber.
        #[arg(long, value_parser = rational_arg)]
        alpha: Option<Rational>,
    },
    /// Vortex parameters τ, τ' from α or from τ.
    #[command(allow_negative_numbers = true)]
    VortexParams {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_parser = rational_arg, conflicts_with = "tau", required_unless_present = "tau")]
        alpha: Option<Rational>,
        #[arg(long, value_parser = rational_arg)]
        tau: Option<Rational>,
    },
    /// Covariantly constant triple for τ, τ' and its transform.
    #[command(allow_negative_numbers = true)]
    CovConst {
        #[arg(long, value_parser = rational_arg)]
        tau: Rational,
        #[arg(long, value_parser = rational_arg)]
        tau_prime: Rational,
    },
    /// Covariantly constant triple whose transform is not polystable.
    #[command(allow_negative_numbers = true)]
    Counterexample {
        #[arg(value_parser = rational_arg, default_value = "2")]
        mu1: Rational,
        #[arg(value_parser = rational_arg, default_value = "1")]
        mu2: Rational,
    },
    /// Numerical transform of a line bundle (or a sum, by repeating
    /// `--degree`) on the square torus.
    #[command(allow_negative_numbers = true)]
    NahmLine(NahmLineArgs),
    /// Transform applied twice to a positive line bundle.
    #[command(allow_negative_numbers = true)]
    DoubleTransform {
        #[arg(long, default_value_t = 1)]
        degree: i64,
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long, default_value_t = 12)]
        dual_grid: usize,
        /// Grid of points on the original torus for the second leg.
        #[arg(long, default_value_t = 8)]
        second_grid: usize,
    },
    /// Run every acceptance criterion.
    VerifyAll {
        /// Restrict to the given criterion numbers.
        #[arg(long)]
        only: Vec<u8>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct NahmLineArgs {
    #[arg(long, required = true)]
    pub degree: Vec<i64>,
    #[arg(long, default_value_t = 32)]
    pub grid: usize,
    #[arg(long, default_value_t = 12)]
    pub dual_grid: usize,
    #[arg(long, value_enum, default_value_t = SchemeArg::Link)]
    pub scheme: SchemeArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Write the curvature heatmap CSV here.
    #[arg(long)]
    pub heatmap: Option<PathBuf>,
    /// Boundary identification tolerance (default 1e-10 for the link
    /// scheme, 1 for the affine scheme).
    #[arg(long)]
    pub boundary_tolerance: Option<f64>,
}

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn has_flag(args: &[String], flag: &str) -> bool {
    args.iter().any(|a| a == flag || a.starts_with(&format!("{flag}=")))
}

/// Appends flags from the `--config` JSON object that are absent from
/// `args`.
pub fn merge_config(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    let Value::Object(map) = value else {
        return Err(CliError::Usage(format!("{path}: config must be a JSON object")));
    };
    merge_values(args, &map)
}

pub fn merge_values(mut args: Vec<String>, map: &serde_json::Map<String, Value>) -> Result<Vec<String>, CliError> {
    let mut extra = Vec::new();
    for (key, v) in map {
        let flag = format!("--{}", key.replace('_', "-"));
        if flag == "--config" || has_flag(&args, &flag) {
            continue;
        }
        let items = match v {
            Value::Array(a) => a.clone(),
            other => vec![other.clone()],
        };
        for item in items {
            match item {
                Value::Bool(true) => extra.push(flag.clone()),
                Value::Bool(false) | Value::Null => {}
                Value::String(s) => extra.push(format!("{flag}={s}")),
                Value::Number(n) => extra.push(format!("{flag}={n}")),
                other => return Err(CliError::Usage(format!("config key {key}: unsupported value {other}"))),
            }
        }
    }
    args.extend(extra);
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn strings(a: &[&str]) -> Vec<String> {
        a.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn flags_win_over_config() {
        let map = json!({"grid": 16, "dual_grid": 8, "format": "json"});
        let args = strings(&["nahm", "nahm-line", "--degree", "1", "--grid", "24"]);
        let merged = merge_values(args, map.as_object().unwrap()).unwrap();
        let cli = Cli::try_parse_from(merged).unwrap();
        assert_eq!(cli.format, Format::Json);
        match cli.command {
            Command::NahmLine(a) => assert_eq!((a.grid, a.dual_grid), (24, 8)),
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn negative_degrees_parse() {
        let cli = Cli::try_parse_from(strings(&["nahm", "transform-triple", "2", "1", "-1", "-3"])).unwrap();
        match cli.command {
            Command::TransformTriple { t } => assert_eq!((t.d1, t.d2), (-1, -3)),
            _ => panic!("wrong subcommand"),
        }
    }
}
