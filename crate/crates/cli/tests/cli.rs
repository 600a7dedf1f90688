//! End-to-end tests of the `helicap` binary: exit codes, JSON shapes,
//! profile interchange, and determinism of seeded runs.

use serde_json::Value;
use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

fn helicap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helicap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad JSON ({e}): {text}"))
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn pipeline_shell_forces_unit_rescaling() {
    let out = helicap(&["pipeline", "shell", "--r", "1", "--R", "2", "--n", "2"]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["outputs"]["forced_c"], 1.0);
    assert_eq!(report["outputs"]["figure_residual_volume"], 0.0);
    let c0 = report["outputs"]["c0"].as_f64().unwrap();
    assert!((c0 - (15.0f64 / 16.0).sqrt()).abs() < 1e-6);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn pipeline_thin_shell_passes() {
    let out = helicap(&["pipeline", "shell", "--r", "1", "--R", "1.01", "--n", "2"]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["outputs"]["forced_c"], 1.0);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn pipeline_rejects_bad_radii() {
    let out = helicap(&["pipeline", "shell", "--r", "2", "--R", "1"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 < r < R"));
}

#[test]
fn helicity_compute_emits_interchange_profile() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.json");
    let out = helicap(&[
        "--out",
        path.to_str().unwrap(),
        "helicity",
        "compute",
        "--region",
        "shell",
        "--r",
        "1",
        "--R",
        "2",
        "--dim",
        "4",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let profile = stdout_json(&out);
    assert_eq!(profile["k"], 2);
    assert_eq!(profile["n"], 2);
    let components = profile["components"].as_array().unwrap();
    assert_eq!(components.len(), 2);
    let outer = components[0]["h"].as_f64().unwrap();
    let inner = components[1]["h"].as_f64().unwrap();
    assert!((outer - 16.0 * PI * PI).abs() < 1e-4);
    assert!((inner + PI * PI).abs() < 1e-5);

    // the emitted file is byte-identical interchange JSON and feeds the
    // recognition commands
    let text = std::fs::read_to_string(&path).unwrap();
    let inline: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(inline, profile);

    let out = helicap(&["recognition", "verify", "--profile", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["outputs"]["forced_c"], 1.0);
}

fn write_profile(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn recognition_subcommands_on_handwritten_profile() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_profile(
        dir.path(),
        "p.json",
        r#"{"n": 2, "components": [
            {"label": "a", "h": 2.0},
            {"label": "b", "h": 1.0},
            {"label": "c", "h": -0.5}
        ]}"#,
    );

    let out = helicap(&["recognition", "c0", "--profile", &path]);
    assert_eq!(exit_code(&out), 0);
    let report = stdout_json(&out);
    let c0 = report["outputs"]["c0"].as_f64().unwrap();
    assert!((c0 - 0.8660254037844386).abs() < 1e-6);

    let out = helicap(&["recognition", "keylemma", "--profile", &path]);
    assert_eq!(exit_code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["outputs"]["total_assignments"], 27);

    let csv = dir.path().join("spectrum.csv");
    let out = helicap(&[
        "recognition",
        "spectrum",
        "--profile",
        &path,
        "--emit-csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("lo,hi\n"));
    assert!(csv_text.lines().count() >= 2);
}

#[test]
fn recognition_refuses_profiles_without_negative_mass() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_profile(
        dir.path(),
        "pos.json",
        r#"{"n": 2, "components": [{"label": "a", "h": 1.0}]}"#,
    );
    let out = helicap(&["recognition", "verify", "--profile", &path]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("negative"));
}

#[test]
fn malformed_profiles_are_diagnosed() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_profile(dir.path(), "bad.json", "{\"n\": 2, \"components\": [{\"label\":");
    let out = helicap(&["recognition", "c0", "--profile", &path]);
    assert_eq!(exit_code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "diagnostic lacks position: {err}");

    // n = 1 violates the helicity order requirement
    let path = write_profile(
        dir.path(),
        "n1.json",
        r#"{"n": 1, "components": [{"label": "a", "h": 1.0}]}"#,
    );
    let out = helicap(&["recognition", "c0", "--profile", &path]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn stokes_command_reports_residual() {
    let out = helicap(&["stokes", "--region", "ball", "--r", "1", "--dim", "4"]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    let lhs = report["outputs"]["lhs"].as_f64().unwrap();
    assert!((lhs - PI * PI).abs() < 1e-5);
    assert_eq!(report["checks"][0]["name"], "stokes-residual");
    assert_eq!(report["checks"][0]["pass"], true);
}

#[test]
fn capacity_bounds_nonsqueezing_anchor() {
    let out = helicap(&["capacity", "bounds", "--from", "ball:1", "--to", "cylinder"]);
    assert_eq!(exit_code(&out), 0);
    let report = stdout_json(&out);
    let bound = &report["outputs"]["embedding_capacity"];
    assert_eq!(bound["lower"], 1.0);
    assert_eq!(bound["upper"], 1.0);
    assert!(bound["derivation"]
        .as_array()
        .unwrap()
        .iter()
        .any(|d| d.as_str().unwrap().contains("NonSqueeze")));
}

#[test]
fn capacity_counterexample_passes() {
    let out = helicap(&["capacity", "counterexample"]);
    assert_eq!(exit_code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["outputs"]["symplectic_exact"], true);
    assert_eq!(report["outputs"]["grid_violations"], 0);
}

#[test]
fn suite_is_deterministic_and_scales_with_count() {
    let strip_clock = |mut v: Value| -> Value {
        v.as_object_mut().unwrap().remove("wall_clock_ms");
        v
    };
    let a = strip_clock(stdout_json(&helicap(&["--seed", "11", "suite", "--count", "2"])));
    let b = strip_clock(stdout_json(&helicap(&["--seed", "11", "suite", "--count", "2"])));
    assert_eq!(a, b, "same seed and count must reproduce every numeric field");

    let empty = stdout_json(&helicap(&["suite", "--count", "0"]));
    assert_eq!(empty["checks"].as_array().unwrap().len(), 0);
    let out = helicap(&["suite", "--count", "0"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn reports_append_to_sink() {
    let dir = tempfile::tempdir().unwrap();
    let sink = dir.path().join("log.jsonl");
    for _ in 0..2 {
        let out = helicap(&[
            "--out",
            sink.to_str().unwrap(),
            "capacity",
            "bounds",
            "--from",
            "ball:1",
            "--to",
            "ball:2",
        ]);
        assert_eq!(exit_code(&out), 0);
    }
    let text = std::fs::read_to_string(&sink).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    for line in lines {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["command"], "capacity bounds");
    }
}

#[test]
fn config_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"seed": 42, "quad_order": 16}"#).unwrap();
    let out = helicap(&[
        "--config",
        cfg.to_str().unwrap(),
        "stokes",
        "--region",
        "ball",
        "--dim",
        "4",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["config"]["seed"], 42);
    assert_eq!(report["config"]["quad_order"], 16);

    // invalid config is a usage error
    std::fs::write(&cfg, r#"{"cap": 0}"#).unwrap();
    let out = helicap(&["--config", cfg.to_str().unwrap(), "suite", "--count", "0"]);
    assert_eq!(exit_code(&out), 2);
}
