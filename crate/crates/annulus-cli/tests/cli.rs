//! End-to-end checks of the command-line front-end: exit codes, artifact
//! schemas, and byte-level determinism.

use serde_json::Value;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_annulus-lab"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        String::from_utf8(out.stderr).expect("stderr is UTF-8"),
    )
}

fn field(v: &Value, path: &[&str]) -> Value {
    let mut cur = v.clone();
    for p in path {
        cur = cur[*p].clone();
    }
    cur
}

#[test]
fn solve_hits_the_reference_anchors() {
    let (code, stdout, _) = run(&["solve", "--epsilon", "+1", "--a", "-0.5"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    let s0 = field(&v, &["s0"]).as_f64().unwrap();
    let r = field(&v, &["r"]).as_f64().unwrap();
    assert!((s0 - 0.76996769).abs() < 1e-6, "s0 = {s0}");
    assert!((r - 1.10109272).abs() < 1e-6, "r = {r}");
    assert!(field(&v, &["residuals", "orthogonality"]).as_f64().unwrap() <= 1e-10);

    let (code, stdout, _) = run(&["solve", "--epsilon", "-1", "--a", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    let s0 = field(&v, &["s0"]).as_f64().unwrap();
    let r = field(&v, &["r"]).as_f64().unwrap();
    assert!((s0 - 1.02674572).abs() < 1e-6, "s0 = {s0}");
    assert!((r - 1.48841493).abs() < 1e-6, "r = {r}");
}

#[test]
fn solve_by_radius_round_trips() {
    let (code, stdout, _) = run(&["solve", "--epsilon", "-1", "--radius", "1.48841493"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    let a = field(&v, &["params", "a"]).as_f64().unwrap();
    assert!((a - 2.0).abs() < 1e-4, "a = {a}");
}

#[test]
fn parameter_window_is_enforced() {
    let (code, _, stderr) = run(&["solve", "--epsilon", "+1", "--a", "0.5"]);
    assert_eq!(code, 4, "stderr: {stderr}");
    let (code, _, _) = run(&["solve", "--epsilon", "+1", "--a", "-1.5"]);
    assert_eq!(code, 4);
    // exactly one of --a / --radius
    let (code, _, _) = run(&["solve", "--epsilon", "+1"]);
    assert_eq!(code, 4);
    let (code, _, _) = run(&["solve", "--epsilon", "+1", "--a", "-0.5", "--radius", "1.0"]);
    assert_eq!(code, 4);
    // malformed epsilon is a usage error
    let (code, _, _) = run(&["solve", "--epsilon", "2", "--a", "-0.5"]);
    assert_eq!(code, 4);
}

#[test]
fn unreachable_radii_exit_2() {
    let (code, _, stderr) = run(&["solve", "--epsilon", "+1", "--radius", "1.6"]);
    assert_eq!(code, 2, "stderr: {stderr}");
    let (code, _, _) = run(&["solve", "--epsilon", "-1", "--radius", "-0.5"]);
    assert_eq!(code, 2);
}

#[test]
fn help_exits_clean_and_usage_errors_exit_4() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("solve"));
    let (code, _, _) = run(&["solve", "--epsilon", "+1", "--a", "-0.5", "--bogus"]);
    assert_eq!(code, 4);
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 4);
}

#[test]
fn verify_passes_clean_and_rejects_corruption() {
    let (code, stdout, _) = run(&["verify", "--epsilon", "+1", "--a", "-0.5"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(field(&v, &["passed"]), Value::Bool(true));

    // corrupt the width: the report is still emitted, the exit code flips
    let (code, stdout, _) = run(&["verify", "--epsilon", "+1", "--a", "-0.5", "--s0", "0.87"]);
    assert_eq!(code, 5);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(field(&v, &["passed"]), Value::Bool(false));
    assert_eq!(field(&v, &["orthogonality_ok"]), Value::Bool(false));
}

#[test]
fn verify_reads_stored_configurations() {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("annulus-cli-cfg-{}.json", std::process::id()));
    let path_s = path.to_str().unwrap();
    let (code, _, _) = run(&[
        "solve", "--epsilon", "-1", "--a", "2", "--out", path_s,
    ]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run(&["verify", "--config", path_s]);
    assert_eq!(code, 0, "stdout: {stdout}");

    // tamper with the stored radius
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["r"] = Value::from(v["r"].as_f64().unwrap() + 1e-3);
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let (code, stdout, _) = run(&["verify", "--config", path_s]);
    assert_eq!(code, 5);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(field(&report, &["radius_ok"]), Value::Bool(false));

    // unreadable path is an I/O failure
    let (code, _, _) = run(&["verify", "--config", "/nonexistent/cfg.json"]);
    assert_eq!(code, 6);
    std::fs::remove_file(&path).ok();
}

#[test]
fn spectrum_csv_shows_the_low_multiplicities() {
    let (code, stdout, _) = run(&["spectrum", "--epsilon", "+1", "--a", "-0.5", "--m-max", "4"]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "index,sigma,m,parity,multiplicity,a_parity"
    );
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect();
    // lowest entry: simple, from the zero mode, antipodally even
    assert_eq!(rows[0][2], "0");
    assert_eq!(rows[0][4], "1");
    assert_eq!(rows[0][5], "even");
    let sigma0: f64 = rows[0][1].parse().unwrap();
    assert!(sigma0 < 0.0);
    // the next eigenvalue: multiplicity 3 across two rows, antipodally odd
    let sigma1: f64 = rows[1][1].parse().unwrap();
    let near: Vec<&Vec<String>> = rows
        .iter()
        .filter(|r| {
            let s: f64 = r[1].parse().unwrap();
            (s - sigma1).abs() <= 1e-6 * sigma1.abs()
        })
        .collect();
    let total: u32 = near.iter().map(|r| r[4].parse::<u32>().unwrap()).sum();
    assert_eq!(total, 3);
    assert!(near.iter().all(|r| r[5] == "odd"));
}

#[test]
fn oracle_csv_matches_the_requested_count() {
    let (code, stdout, _) = run(&[
        "oracle", "--epsilon", "+1", "--a", "-0.5", "--ns", "64", "--ntheta", "64", "--count",
        "6",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "index,sigma,multiplicity");
    assert_eq!(lines.len(), 7);
    // discrete low spectrum: one simple value, then a triple
    let mult: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(2).unwrap())
        .collect();
    assert_eq!(mult[0], "1");
    assert_eq!(mult[1], "3");
}

#[test]
fn nodal_reports_match_the_low_eigenfields() {
    let (code, stdout, _) = run(&[
        "nodal", "--epsilon", "+1", "--a", "-0.5", "--index", "0", "--grid", "65x64",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(field(&v, &["report", "domain_count"]), Value::from(1u64));

    for index in ["1", "2", "3"] {
        let (code, stdout, _) = run(&[
            "nodal", "--epsilon", "+1", "--a", "-0.5", "--index", index, "--grid", "65x64",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(
            field(&v, &["report", "domain_count"]),
            Value::from(2u64),
            "index {index}"
        );
        assert_eq!(field(&v, &["a_parity"]), Value::from("odd"));
    }

    let (code, _, _) = run(&[
        "nodal", "--epsilon", "+1", "--a", "-0.5", "--index", "999", "--grid", "65x64",
    ]);
    assert_eq!(code, 4);
}

#[test]
fn artifacts_are_deterministic() {
    for args in [
        vec!["solve", "--epsilon", "+1", "--a", "-0.5"],
        vec!["spectrum", "--epsilon", "-1", "--a", "2", "--m-max", "3"],
        vec![
            "nodal", "--epsilon", "+1", "--a", "-0.5", "--index", "1", "--grid", "65x64",
        ],
    ] {
        let (c1, first, _) = run(&args);
        let (c2, second, _) = run(&args);
        assert_eq!(c1, 0);
        assert_eq!(c2, 0);
        assert_eq!(first, second, "args: {args:?}");
        assert!(first.ends_with('\n'));
    }
}

#[test]
fn mesh_json_round_trips_byte_identically() {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("annulus-cli-mesh-{}.json", std::process::id()));
    let path_s = path.to_str().unwrap();
    let (code, _, _) = run(&[
        "export-mesh", "--epsilon", "+1", "--a", "-0.5", "--grid", "9x12", "--out", path_s,
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let re_emitted = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(text, re_emitted);
    assert_eq!(v["faces"].as_array().unwrap().len(), 8 * 12 * 2);
    std::fs::remove_file(&path).ok();
}
