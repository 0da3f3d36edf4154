use serde_json::Value;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};
use tempfile::NamedTempFile;

const GHZ: &str = "# three-qubit GHZ\nqubits 3\nh 0\ncnot 0 1\ncnot 0 2\n";

fn negsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negsim"))
        .args(args)
        .env_remove("NEGSIM_BUDGET")
        .output()
        .expect("binary runs")
}

fn circuit_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn close(v: &Value, want: f64, tol: f64) -> bool {
    (v.as_f64().unwrap() - want).abs() <= tol
}

#[test]
fn exact_ghz_parities() {
    let f = circuit_file(GHZ);
    let out = negsim(&["exact", "--circuit", path(&f), "--obs", "XXX", "--obs", "ZII=+1", "--format", "json"]);
    let v = json(&out);
    let rows = v["observables"].as_array().unwrap();
    assert_eq!(rows[0]["observable"], "XXX=+1");
    assert!(close(&rows[0]["probability"], 1.0, 1e-12));
    assert!(close(&rows[1]["probability"], 0.5, 1e-12));
}

#[test]
fn missing_file_is_usage_error() {
    let out = negsim(&["exact", "--circuit", "/definitely/not/here.circ", "--obs", "XXX"]);
    assert_eq!(code(&out), 1);
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());
}

#[test]
fn parse_error_reports_line() {
    let f = circuit_file("qubits 2\nh 0\nfoo 1\n");
    let out = negsim(&["exact", "--circuit", path(&f), "--obs", "ZZ"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn observable_length_mismatch_is_rejected() {
    let f = circuit_file(GHZ);
    let out = negsim(&["exact", "--circuit", path(&f), "--obs", "XX"]);
    assert_ne!(code(&out), 0);
}

#[test]
fn enumerate_ghz_has_nine_rows() {
    let f = circuit_file(GHZ);
    let v = json(&negsim(&["enumerate", "--circuit", path(&f), "--obs", "XXX=+1", "--format", "json"]));
    assert_eq!(v["sequences"].as_array().unwrap().len(), 9);
    assert!(close(&v["totals"]["XXX=+1"], 1.0, 1e-12));
    assert!(close(&v["amplification"], 9.0, 0.0));
}

#[test]
fn enumerate_without_cnots_has_one_row() {
    let f = circuit_file("qubits 2\nh 0\nh 1\n");
    let v = json(&negsim(&["enumerate", "--circuit", path(&f), "--obs", "XX", "--format", "json"]));
    let rows = v["sequences"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["sign"], 1);
    assert!(close(&v["totals"]["XX=+1"], 1.0, 1e-12));
}

fn chain(n_cnots: usize) -> String {
    let mut s = String::from("qubits 2\nh 0\n");
    for _ in 0..n_cnots {
        s.push_str("cnot 0 1\n");
    }
    s
}

#[test]
fn enumerate_over_budget_exits_2() {
    let f = circuit_file(&chain(13));
    let out = negsim(&["enumerate", "--circuit", path(&f), "--obs", "ZZ"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--budget"));
}

#[test]
fn budget_env_and_flag_are_honoured() {
    let f = circuit_file(&chain(3));
    let low = Command::new(env!("CARGO_BIN_EXE_negsim"))
        .args(["enumerate", "--circuit", path(&f), "--obs", "ZZ"])
        .env("NEGSIM_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(code(&low), 2);
    let ok = negsim(&["enumerate", "--circuit", path(&f), "--obs", "ZZ", "--budget", "216"]);
    assert_eq!(code(&ok), 0);
}

#[test]
fn sample_zero_shots_exits_1() {
    let f = circuit_file(GHZ);
    let out = negsim(&["sample", "--circuit", path(&f), "--obs", "XXX", "--shots", "0"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn sample_ghz_estimate() {
    let f = circuit_file(GHZ);
    let v = json(&negsim(&[
        "sample", "--circuit", path(&f), "--obs", "XXX=+1", "--shots", "1000000", "--seed", "42", "--format", "json",
    ]));
    let e = &v["estimates"][0];
    assert!(close(&e["amplification"], 9.0, 0.0));
    assert!(close(&e["estimate"], 1.0, 0.05), "estimate {}", e["estimate"]);
    assert!(close(&v["overhead"], 9.0, 0.0));
}

#[test]
fn sample_is_reproducible_across_runs_and_workers() {
    let f = circuit_file(GHZ);
    let run = |workers: &str| {
        let out = negsim(&[
            "sample", "--circuit", path(&f), "--obs", "XXX=+1", "--obs", "YYX=-1", "--shots", "200000", "--seed", "7",
            "--format", "json", "--workers", workers,
        ]);
        assert_eq!(code(&out), 0);
        out.stdout
    };
    let one = run("1");
    assert_eq!(one, run("1"));
    assert_eq!(one, run("4"));
}

#[test]
fn sample_pretty_reports_overhead() {
    let f = circuit_file(GHZ);
    let out = negsim(&["sample", "--circuit", path(&f), "--obs", "XXX", "--shots", "1000"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("3^2 = 9"));
}

#[test]
fn workers_zero_is_rejected() {
    let out = negsim(&["ghz-table", "--workers", "0"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn ghz_table_json_matches_reference() {
    let v = json(&negsim(&["ghz-table", "--format", "json"]));
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["n_qubits", "n_cnots", "sequences", "totals", "amplification", "classical"]);
    let rows = v["sequences"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let row = |label: &str| rows.iter().find(|r| r["label"] == label).unwrap();
    assert!(close(&row("L2-L2")["conditionals"]["XXX=+1"], 1.0, 1e-12));
    assert!(close(&row("L2-L3bar")["conditionals"]["YXY=-1"], 0.0, 1e-12));
    assert!(close(&row("L3bar-L2")["conditionals"]["YYX=-1"], 0.0, 1e-12));
    assert!(close(&row("L3bar-L3bar")["conditionals"]["XYY=-1"], 1.0, 1e-12));
    assert_eq!(row("L2-L3bar")["sign"], -1);
    assert_eq!(row("L3bar-L3bar")["sign"], 1);
    for obs in ["XXX=+1", "XYY=-1", "YXY=-1", "YYX=-1"] {
        assert!(close(&v["totals"][obs], 1.0, 1e-12));
    }
    let classical = v["classical"].as_array().unwrap();
    let xxx = &classical[0];
    assert_eq!(xxx["observable"], "XXX=+1");
    assert!(close(&xxx["p_pos"], 3.0 / 9.0, 1e-12));
    assert!(close(&xxx["p_neg"], 2.0 / 9.0, 1e-12));
    assert!(close(&xxx["amplification"], 9.0, 0.0));
    assert!(close(&xxx["reconstruction"], 1.0, 1e-12));
}

#[test]
fn ghz_table_pretty_shows_fractions() {
    let out = negsim(&["ghz-table"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("L3bar-L3bar"));
    assert!(text.contains("1/2"));
    assert!(text.contains("3/9"));
}

#[test]
fn verify_passes_by_default() {
    let out = negsim(&["verify"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("CNOT chi support"));
    assert!(text.contains("(5, 4)"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn verify_failure_exits_3() {
    let out = negsim(&["verify", "--tol", "0"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL]"));
}

#[test]
fn verify_negative_tolerance_is_usage_error() {
    assert_eq!(code(&negsim(&["verify", "--tol", "-1"])), 1);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("table.json");
    let out = negsim(&["ghz-table", "--format", "json", "--output", target.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_slice(&std::fs::read(Path::new(&target)).unwrap()).unwrap();
    assert_eq!(written["n_cnots"], 2);
}

#[test]
fn csv_output_has_header() {
    let f = circuit_file(GHZ);
    let out = negsim(&["enumerate", "--circuit", path(&f), "--obs", "XXX", "--format", "csv"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().next().unwrap(), "label,sign,XXX=+1");
    assert_eq!(text.lines().count(), 11);
    assert_eq!(text.lines().last().unwrap(), "total,,1");
}

#[test]
fn unknown_subcommand_exits_1() {
    assert_eq!(code(&negsim(&["bogus"])), 1);
}
