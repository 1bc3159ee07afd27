use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ckernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckernel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn solve_c5() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c5.txt", "p cycle 5 5 0\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    let out = ckernel(&["solve", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["decision"], "yes");
}

#[test]
fn verify_k8_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k8.txt");
    let p = path.to_str().unwrap();
    let out = ckernel(&["gen", "complete", "8", "-k", "1", "-o", p]);
    assert_eq!(out.status.code(), Some(0));
    let out = ckernel(&["verify", p]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert_eq!(report["check"], "PASS");
    assert_eq!(report["decision"], "no");
    assert_eq!(report["trace"][0]["rule"], "small_budget");
}

#[test]
fn verify_pcfe_on_c4() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c4.txt", "p pcfe 4 4 1\ne 1 2\ne 2 3\ne 3 4\ne 4 1\na 1 3\n");
    let out = ckernel(&["verify", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["check"], "PASS");
}

#[test]
fn kernelize_reports_a_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c12.txt");
    let p = path.to_str().unwrap();
    assert!(ckernel(&["gen", "cycle", "12", "-k", "3", "-o", p]).status.success());
    let out = ckernel(&["kernelize", p]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["decision"], "kernel");
    assert_eq!(report["bound"], "4.5k+10");
    assert!(report["kernel"]["n"].as_u64().unwrap() <= 23);
    assert_eq!(report["trace"][0]["rule"], "rule4");
}

#[test]
fn parse_errors_exit_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "p cycle 3 2 0\ne 1 2\ne 2 9\n");
    let out = ckernel(&["kernelize", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = ckernel(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_cap_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c12.txt");
    let p = path.to_str().unwrap();
    assert!(ckernel(&["gen", "cycle", "12", "-o", p]).status.success());
    assert_eq!(ckernel(&["solve", p]).status.code(), Some(3));
    assert_eq!(ckernel(&["verify", p, "--oracle-cap", "12"]).status.code(), Some(0));
}

#[test]
fn gen_is_deterministic_and_parses() {
    let a = ckernel(&["gen", "random-2connected", "30", "45", "--seed", "4"]);
    let b = ckernel(&["gen", "random-2connected", "30", "45", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.lines().any(|l| l == "p cycle 30 45 0"));
    let pcfe = ckernel(&["gen", "path", "5", "--kind", "pcfe", "-k", "1"]);
    assert!(String::from_utf8(pcfe.stdout).unwrap().contains("a 1 5"));
    assert_eq!(ckernel(&["gen", "cycle", "2"]).status.code(), Some(2));
}

#[test]
fn sweep_exhaustive_agrees() {
    let out = ckernel(&[
        "sweep",
        "--family",
        "connected",
        "--exhaustive-n",
        "5",
        "--k-min",
        "0",
        "--k-max",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert_eq!(report["failures"], 0);
    assert_eq!(report["by_k"].as_array().unwrap().len(), 4);
}

#[test]
fn sweep_generated_family() {
    let out = ckernel(&[
        "sweep",
        "--family",
        "blown-cycle",
        "--params",
        "6,3",
        "--k-min",
        "12",
        "--k-max",
        "12",
        "--count",
        "4",
        "--sequential",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["rows"].as_array().unwrap().len(), 4);
}
