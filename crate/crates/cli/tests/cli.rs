use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_divlabel"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], stdin: Option<&str>) -> (String, Value) {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap();
    (text, v)
}

fn error_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn construct_caterpillar() {
    let (_, v) = ok_json(&["construct", "caterpillar", "--spec", "1,1", "--d", "3"], None);
    assert_eq!(v["values"], serde_json::json!([2, 0, 3, 5]));
    assert_eq!(v["d"], 3);
    assert!(v["provenance"].as_str().unwrap().starts_with("caterpillar/"));
}

#[test]
fn construct_corona_records_closing_value() {
    let (text, v) = ok_json(&["construct", "corona", "--t", "5", "--lambda", "2", "--d", "6"], None);
    assert_eq!(v["metadata"]["c"], 17);
    assert_eq!(v["graph"]["lambda"], 2);
    let out = run(&["verify"], Some(&text));
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["holds"], true);
}

#[test]
fn construct_hairy_needs_odd() {
    let (_, v) = ok_json(&["construct", "hairy", "--spec", "1,3,1,3,3,0,0,3,6,0", "--odd"], None);
    assert_eq!(v["values"].as_array().unwrap().len(), 30);
    let (_, w) = ok_json(
        &["construct", "hairy", "--spec", "1,3,1,3,3,0,0,3,6,0", "--odd", "--transforms"],
        None,
    );
    assert!(!w["metadata"]["trace"].as_array().unwrap().is_empty());
    let out = run(&["construct", "hairy", "--spec", "1,1"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_cycle_and_bad_lengths() {
    let (_, v) = ok_json(&["construct", "cycle", "--edges", "8", "--d", "2"], None);
    assert_eq!(v["graph"]["kind"], "cycle");
    let out = run(&["construct", "cycle", "--edges", "6", "--d", "1"], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["error"], "out-of-domain");
}

#[test]
fn transform_updates_trace() {
    let (text, _) = ok_json(&["construct", "caterpillar", "--spec", "2,2,1,2,1,1", "--d", "2"], None);
    let (_, v) = ok_json(&["transform", "--op", "O1", "--s", "2"], Some(&text));
    let trace = v["metadata"]["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 2);
    assert_eq!(trace[1]["op"]["op"], "O1");
    assert_ne!(trace[0]["closing"], trace[1]["closing"]);
}

#[test]
fn transform_precondition_failure_exits_1() {
    let (text, _) = ok_json(&["construct", "caterpillar", "--spec", "2,1,0,1"], None);
    let out = run(&["transform", "--op", "O1", "--s", "1"], Some(&text));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_of(&out)["error"], "preconditions-not-met");
}

#[test]
fn decompose_and_verify() {
    let (text, _) = ok_json(&["construct", "cycle", "--edges", "8", "--d", "2"], None);
    let (dec, v) = ok_json(&["decompose", "--n", "2", "--verify"], Some(&text));
    assert_eq!(v["v"], 40);
    assert_eq!(v["blockCount"], 80);
    assert_eq!(v["developed"].as_array().unwrap().len(), 80);
    assert_eq!(v["certificate"]["holds"], true);
    let out = run(&["verify"], Some(&dec));
    assert!(out.status.success());

    // a repeated block covers its edges twice and exits 1
    let mut broken: Value = serde_json::from_str(&dec).unwrap();
    broken["developed"][0] = broken["developed"][1].clone();
    let out = run(&["verify"], Some(&broken.to_string()));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn decompose_without_materializing() {
    let (text, _) = ok_json(&["construct", "caterpillar", "--spec", "0"], None);
    let (_, v) = ok_json(&["decompose", "--n", "1", "--no-materialize"], Some(&text));
    assert!(v.get("developed").is_none());
    assert_eq!(v["baseBlocks"], serde_json::json!([[[0, 1]]]));
}

#[test]
fn verify_rejects_bad_labeling() {
    let (text, _) = ok_json(&["construct", "caterpillar", "--spec", "1,1"], None);
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["values"] = serde_json::json!([0, 1, 2, 3]);
    let out = run(&["verify"], Some(&v.to_string()));
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["holds"], false);
}

#[test]
fn search_small_graph() {
    let (text, _) = ok_json(&["construct", "caterpillar", "--spec", "1,1"], None);
    let (_, v) = ok_json(&["search", "--d", "1", "--alpha"], Some(&text));
    assert_eq!(v["count"], 2);
    let (_, w) = ok_json(&["search", "--d", "1", "--limit", "1"], Some(&text));
    assert_eq!(w["count"], 1);
}

#[test]
fn export_formats() {
    let (text, _) = ok_json(&["construct", "cycle", "--edges", "8", "--d", "1"], None);
    let out = run(&["export", "--format", "dot"], Some(&text));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph G {"));
    assert!(dot.contains("style=dashed"));
    let (again, _) = ok_json(&["export", "--format", "json"], Some(&text));
    assert_eq!(again, text);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("divlabel-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = run(&["construct", "caterpillar", "--spec", "0", "-o", p], None);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["values"], serde_json::json!([0, 1]));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn usage_errors() {
    for args in [&["frobnicate"][..], &["construct", "corona", "--t", "x"], &["verify", "--d"]] {
        let out = run(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(error_of(&out)["error"], "usage");
    }
    let out = run(&["verify"], Some("{not json"));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["error"], "invalid-document");
    let out = run(&["construct", "corona", "--t", "5", "--lambda", "2", "--d", "7"], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["error"], "not-admissible");
}

#[test]
fn help_succeeds() {
    let out = run(&["--help"], None);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("construct"));
}
