//! Command line front end: argument parsing, report assembly and emission,
//! and the acceptance suite.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod emit;
pub mod error;
pub mod report;

use std::io::Write as _;

use clap::error::ErrorKind;
use clap::Parser;

use args::{merge_config, Cli};
use emit::emit;

/// Runs the command line and returns the process exit code.
pub fn main_with(argv: Vec<String>) -> i32 {
    let argv = match merge_config(argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.tag());
            return 1;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.tag());
            return 1;
        }
    };
    let text = match emit(&outcome.report, cli.format, outcome.heatmap.as_deref()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.tag());
            return 1;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error[io]: {e}");
        return 1;
    }
    outcome.report.status.exit_code()
}
