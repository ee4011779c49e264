//! End-to-end tests for the `steenrod` binary: exit codes, JSON documents,
//! determinism, and the transition-matrix cache directory.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn steenrod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steenrod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn bounds_human_output() {
    let out = steenrod(&["bounds", "11"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("lower 120"));
    assert!(text.contains("upper 720"));
    assert!(text.contains("exact 120"));
    assert!(text.contains("exact 15"));
}

#[test]
fn bounds_json_document() {
    let doc = stdout_json(&steenrod(&["bounds", "7", "--json"]));
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "bounds");
    assert_eq!(doc["parameters"]["n"], 7);
    assert_eq!(doc["result"]["kso"]["lower"], "3");
    assert_eq!(doc["result"]["kso"]["upper"], "3");
    assert_eq!(doc["result"]["kso"]["exact"], "3");
    assert_eq!(doc["engine"]["name"], "steenrod");
    assert!(doc["elapsed_ms"].is_number());

    // Structured output round-trips.
    let text = serde_json::to_string(&doc).unwrap();
    let reparsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc, reparsed);
}

#[test]
fn bounds_superseded_flag() {
    let doc = stdout_json(&steenrod(&["bounds", "11", "--json", "--show-superseded"]));
    assert_eq!(doc["result"]["superseded"]["ku"], "1440");
    assert_eq!(doc["result"]["superseded"]["kso"], "45");
    let plain = stdout_json(&steenrod(&["bounds", "11", "--json"]));
    assert!(plain["result"].get("superseded").is_none());
}

#[test]
fn bounds_rejects_zero() {
    let out = steenrod(&["bounds", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chi_milnor_terms() {
    let doc = stdout_json(&steenrod(&["chi", "2", "3", "--json"]));
    let terms = doc["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["xi"], serde_json::json!([0, 1]));
    assert_eq!(terms[1]["xi"], serde_json::json!([3]));
    assert_eq!(doc["result"]["degree"], 6);
}

#[test]
fn chi_admissible_basis() {
    let doc = stdout_json(&steenrod(&["chi", "3", "2", "--basis", "admissible", "--json"]));
    let terms = doc["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["word"], serde_json::json!([2]));

    let unit = stdout_json(&steenrod(&["chi", "3", "0", "--json"]));
    let terms = unit["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["xi"], serde_json::json!([]));
}

#[test]
fn chi_rejects_composite_prime() {
    let out = steenrod(&["chi", "4", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
}

#[test]
fn ex_table_rows() {
    let doc = stdout_json(&steenrod(&["ex", "2", "3", "--json"]));
    let rows = doc["result"]["rows"].as_array().unwrap();
    let pick = |i: usize| (rows[i]["r"].clone(), rows[i]["ex"].clone(), rows[i]["diff"].clone());
    assert_eq!(pick(0), (0.into(), 0.into(), Value::Null));
    assert_eq!(pick(1), (1.into(), 2.into(), 2.into()));
    assert_eq!(pick(2), (2.into(), 4.into(), 2.into()));
    assert_eq!(pick(3), (3.into(), 2.into(), (-2).into()));
}

#[test]
fn upsilon_flags_the_greatest() {
    let doc = stdout_json(&steenrod(&["upsilon", "3", "5", "--json"]));
    let seqs = doc["result"]["sequences"].as_array().unwrap();
    assert_eq!(seqs.len(), 2);
    assert_eq!(seqs[0]["entries"], serde_json::json!([1, 1]));
    assert_eq!(seqs[0]["greatest"], true);
    assert_eq!(seqs[1]["entries"], serde_json::json!([5]));
    assert_eq!(seqs[1]["greatest"], false);
}

#[test]
fn act_reports_witness() {
    let doc = stdout_json(&steenrod(&["act", "2", "2", "--json"]));
    assert_eq!(doc["result"]["ok"], true);
    assert_eq!(doc["result"]["witness_monomial"], serde_json::json!([2, 2]));
    assert_eq!(doc["result"]["witness_coeff"], 1);

    let human = steenrod(&["act", "2", "2"]);
    assert!(String::from_utf8_lossy(&human.stdout).contains("i1^2*i2^2"));
}

#[test]
fn verify_paper_passes_at_reduced_caps() {
    let out = steenrod(&[
        "verify-paper",
        "--cap-r",
        "4",
        "--cap-n",
        "80",
        "--cap-degree",
        "16",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.matches(" PASS  ").count(), 12);
    assert!(text.contains("12 claims, 12 passed, 0 failed"));
}

#[test]
fn verify_paper_passes_at_default_caps() {
    let out = steenrod(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("12 claims, 12 passed, 0 failed"));
}

#[test]
fn verify_paper_json_lists_every_claim() {
    let doc = stdout_json(&steenrod(&[
        "verify-paper",
        "--json",
        "--cap-r",
        "3",
        "--cap-n",
        "40",
        "--cap-degree",
        "12",
    ]));
    let claims = doc["result"]["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 12);
    assert!(claims.iter().all(|c| c["status"] == "PASS"));
    assert_eq!(doc["result"]["failed"], 0);
}

#[test]
fn commands_are_deterministic() {
    let strip_elapsed = |mut doc: Value| {
        doc.as_object_mut().unwrap().remove("elapsed_ms");
        doc
    };
    for args in [
        vec!["bounds", "23", "--json"],
        vec!["chi", "5", "3", "--json"],
        vec!["upsilon", "2", "9", "--json"],
        vec!["act", "3", "4", "--json"],
    ] {
        let a = strip_elapsed(stdout_json(&steenrod(&args)));
        let b = strip_elapsed(stdout_json(&steenrod(&args)));
        assert_eq!(a, b, "args: {args:?}");
    }
}

#[test]
fn cache_directory_is_populated_and_reused() {
    let dir = std::env::temp_dir().join(format!("steenrod-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);

    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_steenrod"))
            .args(["chi", "2", "5", "--basis", "admissible", "--json"])
            .env("STEENROD_CACHE_DIR", &dir)
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        serde_json::from_slice::<Value>(&out.stdout).unwrap()
    };

    let first = run();
    let cached: Vec<_> = std::fs::read_dir(&dir)
        .expect("cache directory exists")
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().into_string().unwrap())
        .collect();
    assert!(
        cached.iter().any(|name| name == "p2_d10.stm"),
        "cache files: {cached:?}"
    );

    // A second run loads the file instead of recomputing; results agree.
    let second = run();
    assert_eq!(first["result"], second["result"]);

    let _ = std::fs::remove_dir_all(Path::new(&dir));
}
