use std::process::{Command, Output};

use serde_json::Value;

fn nanoloop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nanoloop")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

const RECT: &[&str] = &["--model", "rect", "--E", "0.5", "--V0", "1", "--b", "0.1"];

fn with<'a>(base: &[&'a str], extra: &[&'a str]) -> Vec<&'a str> {
    base.iter().chain(extra).copied().collect()
}

#[test]
fn roots_csv_has_unit_labelled_header() {
    let out = stdout(&nanoloop(&with(&["roots"], RECT)));
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "branch,theta_rad,pre_barrier_length_nm,det_residual,det_scale,sigma_ratio"
    );
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "0");
    assert!((first[1].parse::<f64>().unwrap() + 0.354590).abs() < 5e-7);
}

#[test]
fn json_carries_schema_config_and_units() {
    let out = stdout(&nanoloop(&with(&["roots", "--format", "json"], RECT)));
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["schema"], "nanoloop.roots/1");
    assert_eq!(doc["config"]["circuit"]["b_nm"], 0.1);
    assert_eq!(doc["units"]["theta"], "rad");
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 5);
    assert!((records[1]["theta_rad"].as_f64().unwrap() + 5.928596).abs() < 5e-7);
}

#[test]
fn degrees_flag_converts_input_and_output() {
    let rad = stdout(&nanoloop(&with(&["roots", "--format", "json"], RECT)));
    let deg = stdout(&nanoloop(&with(&["roots", "--format", "json", "--degrees", "--theta-min=-360"], RECT)));
    let rad: Value = serde_json::from_str(&rad).unwrap();
    let deg: Value = serde_json::from_str(&deg).unwrap();
    let deg_records = deg["records"].as_array().unwrap();
    assert_eq!(deg_records.len(), 2);
    for (r, d) in rad["records"].as_array().unwrap().iter().zip(deg_records) {
        let want = r["theta_rad"].as_f64().unwrap().to_degrees();
        assert!((d["theta_deg"].as_f64().unwrap() - want).abs() < 1e-9);
    }
}

#[test]
fn output_is_byte_stable_across_runs_and_thread_counts() {
    let a = nanoloop(&["repro", "table1", "--jobs", "1"]);
    let b = nanoloop(&["repro", "table1", "--jobs", "4"]);
    let c = nanoloop(&["repro", "table1"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a), stdout(&c));
    let j1 = nanoloop(&with(&["coeffs", "--format", "json"], RECT));
    let j2 = nanoloop(&with(&["coeffs", "--format", "json"], RECT));
    assert_eq!(j1.stdout, j2.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("roots.csv");
    let o = nanoloop(&with(&["roots", "--out", path.to_str().unwrap()], RECT));
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, stdout(&nanoloop(&with(&["roots"], RECT))));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("circuit.json");
    std::fs::write(&path, r#"{"model": "rect", "E": 0.5, "V0": 1.0, "b": 0.3, "theta_min": -7.0}"#).unwrap();
    let cfg = path.to_str().unwrap();
    let doc: Value = serde_json::from_str(&stdout(&nanoloop(&["roots", "--format", "json", "--config", cfg, "--b", "0.1"]))).unwrap();
    assert_eq!(doc["config"]["circuit"]["b_nm"], 0.1);
    assert_eq!(doc["config"]["scan"]["theta_min_rad"], -7.0);
    assert_eq!(doc["records"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes_follow_error_class() {
    let domain = nanoloop(&["roots", "--model", "rect", "--E", "2", "--V0", "1", "--b", "0.1"]);
    assert_eq!(domain.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("E < V0"));

    let missing = nanoloop(&["roots", "--model", "tri", "--E", "0.5", "--V0", "1"]);
    assert_eq!(missing.status.code(), Some(2));

    let no_root = nanoloop(&with(&["coeffs", "--branch", "40"], RECT));
    assert_eq!(no_root.status.code(), Some(3));

    let io = nanoloop(&with(&["roots", "--out", "/nonexistent-dir/x.csv"], RECT));
    assert_eq!(io.status.code(), Some(4));

    let bad_config = nanoloop(&with(&["roots", "--config", "/nonexistent-dir/c.json"], RECT));
    assert_eq!(bad_config.status.code(), Some(4));
}

#[test]
fn wavefunction_rows_cover_both_regions() {
    let out = stdout(&nanoloop(&["wavefunction", "--model", "tri", "--E", "0.5", "--V0", "1", "--c", "0.5", "--samples", "5"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "region,x_nm,psi");
    assert_eq!(lines.len(), 11);
    assert!(lines[1..6].iter().all(|l| l.starts_with("wire,")));
    assert!(lines[6..].iter().all(|l| l.starts_with("barrier,")));
}

#[test]
fn det_evaluates_requested_phases() {
    let out = stdout(&nanoloop(&["det", "--model", "delta", "--E", "0.5", "--alpha", "1", "--theta=-1,-2"]));
    let rows: Vec<Vec<f64>> = out.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 2);
    assert!((rows[0][2] - (-1.0f64).sin()).abs() < 1e-15);
    assert!((rows[1][2] - (-2.0f64).sin()).abs() < 1e-15);
}

#[test]
fn repro_reports_expose_findings() {
    let doc: Value = serde_json::from_str(&stdout(&nanoloop(&["repro", "xi-sweep", "--format", "json"]))).unwrap();
    let findings = doc["findings"].as_array().unwrap();
    assert!(findings.iter().any(|f| f.as_str().unwrap().contains("2*pi*n family")));
    let shorted: Value = serde_json::from_str(&stdout(&nanoloop(&["repro", "shorted", "--format", "json"]))).unwrap();
    assert_eq!(shorted["summary"]["constant_sign"], false);
}
