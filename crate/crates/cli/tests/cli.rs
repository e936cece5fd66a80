//! End-to-end runs of the `gstool` binary.

use std::path::Path;
use std::process::{Command, Output};

use gs_core::certify::Certificate;
use gs_core::SetFunction;

fn gstool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gstool"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    assert_eq!(code(&gstool(&full)), 0);
    path
}

#[test]
fn check_reports_classes_and_require_sets_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let ba = construct(dir.path(), "ba.json", &["ba", "--k", "2", "--d", "1"]);
    let o = gstool(&["--json", "check", "--file", &ba]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["submodular"], true);
    assert_eq!(v["gs"], false);
    assert_eq!(code(&gstool(&["check", "--file", &ba, "--require", "gs"])), 1);
    assert_eq!(code(&gstool(&["check", "--file", &ba, "--require", "submodular"])), 0);
}

#[test]
fn gap_certifier_is_infeasible_below_four_thirds() {
    let dir = tempfile::tempdir().unwrap();
    let ba = construct(dir.path(), "ba.json", &["ba", "--k", "2", "--d", "1"]);
    let cert_path = dir.path().join("cert.json").to_string_lossy().into_owned();
    let o = gstool(&["certify", "gap", "--f", &ba, "--rho", "133/100", "--out", &cert_path]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("Infeasible"));
    let cert: Certificate = serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert!(cert.is_infeasible());
    assert_eq!(code(&gstool(&["certify", "replay", "--cert", &cert_path])), 0);
    let o = gstool(&["certify", "gap", "--f", &ba, "--rho", "4/3", "--sym"]);
    assert!(stdout(&o).starts_with("Feasible"));
}

#[test]
fn certify_s1_set2_writes_a_replayable_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cert_path = dir.path().join("s1.json").to_string_lossy().into_owned();
    let o = gstool(&[
        "--json", "--jobs", "1", "certify", "s1", "--combos", "set2", "--out", &cert_path,
    ]);
    assert_eq!(code(&o), 0);
    let cert: Certificate = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(cert.is_infeasible());
    assert!(cert.stats.lps_solved <= 729);
    let o = gstool(&["--json", "certify", "replay", "--cert", &cert_path]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], true);
}

#[test]
fn reproduce_reports_pass_and_fail() {
    let o = gstool(&["reproduce", "remark-notsubmodular"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS"));
    let o = gstool(&["--json", "reproduce", "approx2", "--k", "3"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    // The first six-combination set admits a feasible leaf.
    let o = gstool(&["reproduce", "claim-infeasible-set1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
    assert_eq!(code(&gstool(&["reproduce", "claim-infeasible-set2"])), 0);
}

#[test]
fn reproduce_output_is_stable() {
    let a = stdout(&gstool(&["--json", "reproduce", "coverage-ba", "--seed", "3"]));
    let b = stdout(&gstool(&["--json", "reproduce", "coverage-ba", "--seed", "3"]));
    assert_eq!(a, b);
}

#[test]
fn demand_flags_greedy_failures() {
    let dir = tempfile::tempdir().unwrap();
    let ba = construct(dir.path(), "ba.json", &["ba", "--k", "2", "--d", "1"]);
    assert_eq!(code(&gstool(&["demand", "--file", &ba, "--prices", "1/4,0,0"])), 1);
    let gs = construct(dir.path(), "gs.json", &["approx2", "--k", "2"]);
    assert_eq!(code(&gstool(&["demand", "--file", &gs, "--prices", "1/4,0,0"])), 0);
}

#[test]
fn symmetrize_and_convolve_emit_valuations() {
    let dir = tempfile::tempdir().unwrap();
    let g = construct(dir.path(), "g.json", &["additive", "--values", "3,1,0"]);
    let o = gstool(&["symmetrize", "--file", &g, "--pair", "0", "1"]);
    assert_eq!(code(&o), 0);
    let h = SetFunction::from_json(&stdout(&o)).unwrap();
    assert!(h.is_pair_symmetric(0, 1));
    let u = construct(dir.path(), "u.json", &["unit-demand", "--values", "1,2,3"]);
    let o = gstool(&["convolve", "--left", &g, "--right", &u]);
    let c = SetFunction::from_json(&stdout(&o)).unwrap();
    assert_eq!(c.value(c.full()).to_string(), "7");
}

#[test]
fn gap_reports_the_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(dir.path(), "f.json", &["ba", "--k", "2", "--d", "1"]);
    let g = construct(dir.path(), "g.json", &["approx2", "--k", "2"]);
    let o = gstool(&["--json", "gap", "--g", &g, "--f", &f]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ratio"], "4/3");
    assert_eq!(code(&gstool(&["gap", "--g", &f, "--f", &g])), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&gstool(&["bogus"])), 2);
    assert_eq!(code(&gstool(&["check", "--file", "/nonexistent.json"])), 2);
    assert_eq!(code(&gstool(&["reproduce", "no-such-claim"])), 2);
    assert_eq!(code(&gstool(&["construct", "ba", "--k", "1", "--d", "1"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"m":2,"values":["0","1"]}"#).unwrap();
    let o = gstool(&["check", "--file", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("values"));
}
