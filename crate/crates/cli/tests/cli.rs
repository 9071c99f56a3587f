//! End-to-end runs of the binary: exit codes, report schemas, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use geomodels::fixtures::hirzebruch;
use geomodels::rat::rat;
use geomodels::surface::PairConfig;
use geomodels_cli::formats::PairDto;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_geomodels");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .output()
        .expect("binary launches")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("binary exits without a signal")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("geomodels-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("scratch file writes");
    path
}

#[test]
fn interval_vertices_are_reported() {
    let out = run(&["polytope-vertices", "--fixture", "interval", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["dim"], 1);
    assert_eq!(doc["vertices"], serde_json::json!([["0/1"], ["1/1"]]));
}

#[test]
fn malformed_documents_exit_two() {
    let path = scratch("garbage.json", "{ not json");
    let out = run(&["polytope-vertices", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("malformed JSON"), "stderr: {err}");
}

#[test]
fn missing_and_unknown_inputs_exit_two() {
    assert_eq!(code(&run(&["surface-mmp"])), 2);
    let out = run(&["surface-mmp", "--fixture", "no-such-fixture"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unknown fixture"), "stderr: {err}");
}

#[test]
fn contraction_run_reports_the_frozen_example() {
    let out = run(&["surface-mmp", "--fixture", "blown-plane", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["contractions"], 1);
    assert_eq!(doc["contracted"], serde_json::json!(["E"]));
    assert_eq!(doc["outcome"], "not-pseudoeffective");

    let strict = run(&["surface-mmp", "--fixture", "blown-plane", "--require-psef"]);
    assert_eq!(code(&strict), 3);
}

#[test]
fn window_certificate_reports_the_frozen_bound() {
    let out = run(&[
        "denominator-certificate",
        "--fixture",
        "interval",
        "--M",
        "2",
        "--eps",
        "1/4",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["denominator_bound"], 7);
    assert_eq!(doc["all_certified"], true);
}

#[test]
fn geography_report_matches_the_chamber_schema() {
    let out = run(&[
        "surface-geography",
        "--fixture",
        "example-1",
        "--curves",
        "S,E",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    for key in ["eps", "walls", "chambers", "terminal_count"] {
        assert!(doc.get(key).is_some(), "missing key {key}");
    }
    let chambers = doc["chambers"].as_array().unwrap();
    assert_eq!(chambers.len(), 2);
    for ch in chambers {
        for key in ["fingerprint", "cells", "vertices", "lcm_denominator", "terminal"] {
            assert!(ch.get(key).is_some(), "missing chamber key {key}");
        }
    }
    assert_eq!(doc["terminal_count"], 2);
}

#[test]
fn zariski_splits_an_explicit_class() {
    let out = run(&[
        "surface-zariski",
        "--fixture",
        "blown-plane",
        "--class",
        "0,1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["outcome"], "decomposition");
    assert_eq!(doc["positive"], serde_json::json!(["0/1", "0/1"]));
    assert_eq!(
        doc["negative"],
        serde_json::json!([{"coeff": "1/1", "curve": "E"}])
    );
}

#[test]
fn threshold_flag_narrows_the_enumeration() {
    let all = run(&["valuations-enumerate", "--fixture", "snc-two-curves", "--format", "json"]);
    assert_eq!(code(&all), 0);
    assert_eq!(stdout_json(&all)["count"], 3);

    let narrowed = run(&[
        "valuations-enumerate",
        "--fixture",
        "snc-two-curves",
        "--threshold",
        "3/5",
        "--format",
        "json",
    ]);
    assert_eq!(code(&narrowed), 0);
    assert_eq!(stdout_json(&narrowed)["count"], 2);
}

#[test]
fn violated_preconditions_are_named_and_exit_two() {
    let out = run(&["valuations-enumerate", "--fixture", "snc-two-curves", "--threshold", "2"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("threshold must be at most 1"), "stderr: {err}");

    let out = run(&["surface-zariski", "--fixture", "blown-plane", "--class", "1,2,3"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("rank"), "stderr: {err}");
}

#[test]
fn out_of_range_eps_exits_two() {
    let out = run(&["surface-geography", "--fixture", "example-1", "--eps", "3/5"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("between 0 and 1/2"), "stderr: {err}");
}

#[test]
fn pair_documents_load_from_files() {
    let pair = PairConfig::new(hirzebruch(8), &[("H", rat(1, 2)), ("E", rat(1, 2))]).unwrap();
    let text = serde_json::to_string(&PairDto::from_pair(&pair)).unwrap();
    let path = scratch("pair.json", &text);
    let out = run(&["surface-zariski", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["outcome"], "decomposition");
    assert_eq!(doc["class"], serde_json::json!(["6/1", "1/2"]));
}

#[test]
fn suite_runs_are_byte_identical() {
    let path = scratch("suite.json", r#"{"checks": ["example-1", "l_echo"]}"#);
    let args = [
        "verify-bounds",
        path.to_str().unwrap(),
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let doc = stdout_json(&first);
    assert_eq!(doc["failed"], 0);
    assert_eq!(doc["passed"], 2);
}

#[test]
fn empty_suites_pass_with_zero_checks() {
    let path = scratch("empty-suite.json", r#"{"checks": []}"#);
    let out = run(&["verify-bounds", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["total"], 0);
    assert_eq!(doc["failed"], 0);
}

#[test]
fn unknown_check_names_exit_two() {
    let path = scratch("bad-suite.json", r#"["no-such-check"]"#);
    let out = run(&["verify-bounds", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unknown check name"), "stderr: {err}");
}
