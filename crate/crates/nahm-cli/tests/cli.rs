use std::process::Command;

use nahm_cli::report::{parse_rational, Report, Status};

fn nahm(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nahm")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = nahm(&all);
    let report: Report = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, report)
}

#[test]
fn transform_triple_example() {
    let (code, out, _) = nahm(&["transform-triple", "1", "1", "2", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("(2,1,-1,-1), IT_0"), "{out}");
}

#[test]
fn critical_values_example() {
    let (code, out, _) = nahm(&["critical-values", "2", "1", "3", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("{3, 9/2} (candidates)"), "{out}");
    let (_, r) = json(&["critical-values", "2", "1", "3", "0"]);
    let values: Vec<_> = r.results["criticals"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| parse_rational(v.as_str().unwrap()).unwrap())
        .collect();
    assert_eq!(values, vec![nahm_exact::int(3), nahm_exact::rat(9, 2)]);
}

#[test]
fn unmet_hypotheses_exit_with_two() {
    let (code, out, _) = nahm(&["check-preservation", "2", "2", "2", "1", "--regime", "small"]);
    assert_eq!(code, 2);
    assert!(out.contains("gcd(n1,d1)=2 ✗") || out.contains("gcd(n1,d1)=1 ✗"), "{out}");
    let (code, out, _) = nahm(&["check-preservation", "1", "2", "1", "1", "--regime", "small"]);
    assert_eq!(code, 0);
    assert!(out.contains("gcd(n1,d1)=1 ✓"));
}

#[test]
fn chamber_membership_is_a_hypothesis() {
    let (code, r) = json(&["check-preservation", "3", "1", "4", "1", "--regime", "large", "--alpha", "1/2"]);
    assert_eq!(r.status, Status::Ok);
    assert_eq!(code, 0);
    assert!(r.results.contains_key("equivariant"));
    let (code, _) = json(&["check-preservation", "2", "1", "3", "0", "--regime", "large", "--alpha", "7/2"]);
    assert_eq!(code, 2);
}

#[test]
fn domain_errors_carry_the_module_tag() {
    let (code, _, err) = nahm(&["transform-triple", "1", "1", "2", "-1"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[triple_stability]"), "{err}");
    let (code, _, err) = nahm(&["nahm-line", "--degree", "1", "--degree", "-1"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[spectral_nahm]"), "{err}");
    let (code, _, err) = nahm(&["fm-class", "2", "0"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[invariants]"), "{err}");
}

#[test]
fn usage_errors_are_nonzero() {
    assert_eq!(nahm(&["no-such-command"]).0, 1);
    assert_eq!(nahm(&["transform-triple", "1"]).0, 1);
    assert_eq!(nahm(&["--help"]).0, 0);
}

#[test]
fn json_reports_round_trip() {
    for args in [
        vec!["fm-class", "2", "3"],
        vec!["alpha-window", "2", "1", "3", "0", "--alpha", "4"],
        vec!["vortex-params", "2", "1", "3", "0", "--alpha", "3"],
        vec!["cov-const", "--tau", "3/2", "--tau-prime", "1/2"],
        vec!["counterexample"],
        vec!["nahm-line", "--degree", "2", "--grid", "16", "--dual-grid", "8"],
    ] {
        let (_, r) = json(&args);
        assert_eq!(r.schema_version, 1);
        let again: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(again, r);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["nahm-line", "--degree", "1", "--grid", "16", "--dual-grid", "8", "--format", "csv"];
    assert_eq!(nahm(&args).1, nahm(&args).1);
}

#[test]
fn nahm_line_reports_the_curvature() {
    let (code, r) = json(&["nahm-line", "--degree", "1", "--grid", "32", "--dual-grid", "12"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["chern"], -1);
    let mean = r.results["mean_curvature_density"]["value"].as_f64().unwrap();
    assert!((mean + std::f64::consts::TAU).abs() < 1e-9);
    assert!(r.results["max_relative_deviation"]["value"].as_f64().unwrap() <= 0.05);
    assert!(r.results["mean_curvature_density"]["tolerance"].as_f64().unwrap() > 0.0);
}

#[test]
fn heatmap_and_csv_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let heat = dir.path().join("h.csv");
    let out = dir.path().join("r.json");
    let (code, _, _) = nahm(&[
        "nahm-line", "--degree", "1", "--grid", "16", "--dual-grid", "9",
        "--heatmap", heat.to_str().unwrap(), "--format", "json", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let csv = std::fs::read_to_string(&heat).unwrap();
    assert_eq!(csv.lines().count(), 82);
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.command, "nahm-line");
    let (code, _, err) = nahm(&["fm-class", "1", "1", "--format", "csv"]);
    assert_eq!(code, 1);
    assert!(err.contains("error[emit]"));
}

#[test]
fn config_file_supplies_missing_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"grid": 16, "dual_grid": 8, "format": "json"}"#).unwrap();
    let (code, out, _) = nahm(&["nahm-line", "--degree", "1", "--dual-grid", "10", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.inputs["grid"], 16);
    assert_eq!(r.inputs["dual_grid"], 10);
}

#[test]
fn double_transform_restores_the_pair() {
    let (code, r) = json(&["double-transform", "--degree", "1", "--grid", "16", "--dual-grid", "8"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["chern_pair"], serde_json::json!([1, 1]));
}

#[test]
fn verify_all_subset_passes() {
    let (code, r) = json(&["verify-all", "--only", "1", "--only", "4", "--only", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["criteria"].as_array().unwrap().len(), 3);
    assert_eq!(r.results["all_pass"], true);
}
