use std::process::Command;

use serde_json::Value;
use threshold_seidel_cli::{run, EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, Value) {
    let out = run(std::iter::once("threshold-seidel").chain(args.iter().copied()));
    let value = if out.stdout.is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
    };
    (out.code, value)
}

fn result(args: &[&str]) -> Value {
    let (code, v) = call(args);
    assert_eq!(code, EXIT_OK, "{args:?}");
    v["result"].clone()
}

#[test]
fn det_example() {
    let r = result(&["det", "001111"]);
    assert_eq!(r["det"], serde_json::json!(11));
    assert!(r.get("pivots").is_none());
    let r = result(&["det", "0^2 1^4", "--pivots"]);
    assert_eq!(
        r["pivots"],
        serde_json::json!(["-2", "5/2", "8/5", "11/8", "14/11", "-11/14"])
    );
}

#[test]
fn cospectral_pair_example() {
    let r = result(&["cospectral-pair", "--n", "4"]);
    assert_eq!(r["members"], serde_json::json!(["0011", "0101"]));
    assert_eq!(r["charpoly"], serde_json::json!([5, 0, -6, 0, 1]));
}

#[test]
fn enumerate_counts() {
    assert_eq!(
        result(&["enumerate", "--n", "4", "--count-only"])["count"],
        serde_json::json!(4)
    );
    let r = result(&["enumerate", "--n", "4"]);
    assert_eq!(
        r["sequences"],
        serde_json::json!(["0001", "0011", "0101", "0111"])
    );
    let r = result(&["enumerate", "--n", "100", "--count-only"]);
    assert_eq!(r["count"].to_string(), "316912650057057350374175801344");
    assert_eq!(call(&["enumerate", "--n", "30"]).0, EXIT_INVALID);
}

#[test]
fn charpoly_and_spectrum() {
    let r = result(&["charpoly", "0101"]);
    assert_eq!(r["charpoly"], serde_json::json!([5, 0, -6, 0, 1]));
    let r = result(&["spectrum", "01100111"]);
    assert_eq!(
        r["multiplicities"],
        serde_json::json!({ "minus_one": 1, "plus_one": 4 })
    );
    assert_eq!(r["eigenvalues"].as_array().unwrap().len(), 8);
}

#[test]
fn quotient_and_eigvecs() {
    let r = result(&["quotient", "000011"]);
    assert_eq!(r["entries"], serde_json::json!([[3, -2], [-4, -1]]));
    let r = result(&["eigvecs", "01100111"]);
    assert_eq!(
        r["minus_one"],
        serde_json::json!([[0, 0, 0, 1, -1, 0, 0, 0]])
    );
    assert_eq!(
        r["lifted"][0]["vector"],
        serde_json::json!([2, -1, -1, 0, 0, 0, 0, 0])
    );
}

#[test]
fn classify_reports_and_flags_mismatch() {
    let r = result(&["classify", "0101"]);
    assert_eq!(r["predicted"], "Four_TypeA");
    assert_eq!(r["observed_count"], serde_json::json!(4));
    let (code, v) = call(&["classify", "01011"]);
    assert_eq!(code, EXIT_MISMATCH);
    assert_eq!(v["result"]["observed_count"], serde_json::json!(4));
    let r = result(&["classify", "010101"]);
    assert_eq!(r["predicted_count"], Value::Null);
}

#[test]
fn search_and_verify() {
    let r = result(&["cospectral-search", "--n", "4"]);
    assert_eq!(
        r["classes"][0]["members"],
        serde_json::json!(["0011", "0101"])
    );
    let one = result(&["cospectral-search", "--n", "10"]);
    let four = result(&["cospectral-search", "--n", "10", "--jobs", "4"]);
    assert_eq!(one["classes"], four["classes"]);
    assert_eq!(call(&["cospectral-search", "--n", "19"]).0, EXIT_INVALID);

    let r = result(&["verify", "--n", "8", "--jobs", "2"]);
    assert_eq!(r["passed"], Value::Bool(true));
    assert_eq!(r["graphs"], serde_json::json!(127));
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["det", "0110"]).0, EXIT_INVALID);
    assert_eq!(call(&["det", "1011"]).0, EXIT_INVALID);
    assert_eq!(call(&["spectrum", "0"]).0, EXIT_INVALID);
    assert_eq!(call(&["cospectral-pair", "--n", "3"]).0, EXIT_INVALID);
    assert_eq!(call(&["verify", "--n", "1"]).0, EXIT_INVALID);
    assert_eq!(run(["threshold-seidel", "frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(["threshold-seidel", "det"]).code, EXIT_USAGE);
    assert_eq!(run(["threshold-seidel", "--help"]).code, EXIT_OK);
}

#[test]
fn reported_sequences_round_trip() {
    for input in ["0:2,1:4", "0^2 1^4", "0 0 1 1 1 1"] {
        let first = result(&["spectrum", input]);
        let again = result(&["spectrum", first["sequence"].as_str().unwrap()]);
        assert_eq!(first, again);
    }
}

#[test]
fn text_format_is_aligned() {
    let out = run(["threshold-seidel", "det", "001111", "--format", "text"]);
    assert_eq!(out.code, EXIT_OK);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert!(lines
        .iter()
        .any(|l| l.starts_with("det") && l.trim_end().ends_with("11")));
    let col = lines[0].find("det").unwrap();
    assert!(lines.iter().all(|l| l.len() > col));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_threshold-seidel");
    let ok = Command::new(bin).args(["det", "001111"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["command"], "det");
    assert_eq!(v["input"], "001111");
    assert!(v["elapsed_ms"].is_number());
    let bad = Command::new(bin).args(["det", "01a1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("position 3"));
    let mismatch = Command::new(bin)
        .args(["classify", "0010001"])
        .output()
        .unwrap();
    assert_eq!(mismatch.status.code(), Some(3));
}
