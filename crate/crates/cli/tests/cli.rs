use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn quon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = quon(&all);
    (
        o.status.code().unwrap(),
        serde_json::from_slice(&o.stdout).expect("valid json"),
    )
}

fn schema() -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema/report.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&raw).expect("schema compiles")
}

#[test]
fn matrix_n2_rows() {
    let o = quon(&["matrix", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert!(lines.contains(&"1, q".to_string()));
    assert!(lines.contains(&"q, 1".to_string()));
}

#[test]
fn matrix_n1_single_entry() {
    let (code, v) = json(&["matrix", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["matrix"]["entries"], serde_json::json!([["1"]]));
}

#[test]
fn matrix_guard_on_q_one() {
    for q in ["1", "-1", "2/2"] {
        assert_eq!(
            quon(&["matrix", "--n", "2", "--q", q]).status.code(),
            Some(2),
            "q={q}"
        );
    }
}

#[test]
fn usage_errors() {
    assert_eq!(quon(&["matrix"]).status.code(), Some(2));
    assert_eq!(quon(&["matrix", "--n", "0"]).status.code(), Some(2));
    assert_eq!(
        quon(&["matrix", "--n", "2", "--q", "0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        quon(&["verify", "sideways", "--n", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        quon(&["verify", "integrality", "--n", "2", "--q", "1/2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(quon(&["coeffs", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn bench_refuses_large_n() {
    let o = quon(&["bench", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bound 6"));
}

#[test]
fn bench_small_completes() {
    let (code, v) = json(&["bench", "--n", "3"]);
    assert_eq!(code, 0);
    assert!(schema().is_valid(&v));
    let rows = v["result"]["rows"].as_array().unwrap();
    assert!(rows
        .iter()
        .any(|r| r["n"] == 3 && r["mode"] == "symbolic" && r["step"] == "coeffs"));
}

#[test]
fn coeffs_n1_single_line() {
    let o = quon(&["coeffs", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "c_1(e) = 1\n");
}

#[test]
fn coeffs_both_n2() {
    let o = quon(&["coeffs", "--n", "2", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    // 1/(1 - q^2) in canonical form
    assert!(out.contains("c_1(e) = (-1)/(-1 + q^2)"), "{out}");
    assert!(out.contains("agree: true"));
}

#[test]
fn coeffs_both_specialized_n5() {
    let (code, v) = json(&["coeffs", "--n", "5", "--q", "1/3", "--method", "both"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["match"], true);
    assert_eq!(v["q"], "1/3");
}

#[test]
fn verify_det_n3() {
    let (code, v) = json(&["verify", "det", "--n", "3"]);
    assert_eq!(code, 0);
    // (1 - q^2)^6 (1 - q^6)
    let expected =
        "1 - 6*q^2 + 15*q^4 - 21*q^6 + 21*q^8 - 21*q^10 + 21*q^12 - 15*q^14 + 6*q^16 - q^18";
    assert_eq!(v["result"]["determinant"], expected);
    assert_eq!(v["result"]["formula"], expected);
    assert_eq!(v["result"]["match"], true);
}

#[test]
fn verify_eigen_seeded() {
    let (code, v) = json(&["verify", "eigen", "--n", "2", "--q", "1/2", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["result"]["seed"], 7);
    assert_eq!(v["result"]["draws"].as_array().unwrap().len(), 20);
}

#[test]
fn verify_suite_passes_and_validates() {
    let s = schema();
    for args in [
        vec!["verify", "det", "--n", "4", "--q", "-1/2"],
        vec!["verify", "remark1", "--n", "4"],
        vec!["verify", "greenberg", "--n", "3", "--seed", "3"],
        vec!["verify", "integrality", "--n", "3"],
        vec!["verify", "rp", "--n", "3"],
        vec!["verify", "eigen", "--n", "3", "--seed", "1"],
        vec!["matrix", "--n", "3", "--q", "2/5", "--inverse"],
        vec!["coeffs", "--n", "3", "--method", "explicit"],
    ] {
        let (code, v) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["version"], 1);
        let msgs: Vec<String> = match s.validate(&v) {
            Ok(()) => Vec::new(),
            Err(errors) => errors.map(|e| e.to_string()).collect(),
        };
        assert!(msgs.is_empty(), "{args:?}: {msgs:?}");
    }
}

#[test]
fn json_is_byte_identical_and_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = quon(&[
            "verify",
            "eigen",
            "--n",
            "3",
            "--seed",
            "11",
            "--format",
            "json",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    // only the two reports, no temporaries left behind
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn different_seeds_differ() {
    let (_, a) = json(&["verify", "eigen", "--n", "2", "--seed", "1"]);
    let (_, b) = json(&["verify", "eigen", "--n", "2", "--seed", "2"]);
    assert_ne!(a["result"]["draws"], b["result"]["draws"]);
}

#[test]
fn greenberg_rejects_nonzero_q() {
    assert_eq!(
        quon(&["verify", "greenberg", "--n", "2", "--q", "1/2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        quon(&["verify", "greenberg", "--n", "2", "--q", "0"])
            .status
            .code(),
        Some(0)
    );
}
