use std::process::Command;

use biassoc::cli::{run, Outcome};
use serde_json::Value;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_biassoc")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["biassoc"];
    full.extend_from_slice(args);
    let o = run(full);
    assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["boundary", "--gen", "2,2"]).0, 0);
    assert_eq!(bin(&["bogus"]).0, 1);
    assert_eq!(bin(&["boundary", "--gen", "two"]).0, 1);
    assert_eq!(bin(&["boundary"]).0, 1);
    assert_eq!(bin(&["faces", "--n", "0"]).0, 1);
    assert_eq!(bin(&["--help"]).0, 0);
    let (code, out, _) = bin(&["d2check", "--max-total", "5", "--inject", "g(t2^1 t2^2; t1^2 t1^2)"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["(2,3)"]);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["biassoc", "boundary", "--gen", "3,2"],
        vec!["biassoc", "kk-poset", "--n", "1", "--m", "2", "--dot"],
        vec!["biassoc", "--json-indent", "0", "diagonal", "--n", "3"],
    ] {
        let a = run(args.clone());
        let b = run(args.clone());
        assert_eq!(a, b);
        let (code, stdout, stderr) = bin(&args[1..]);
        assert_eq!(a, Outcome { stdout, stderr, code });
    }
}

#[test]
fn dot_output_has_one_line_per_node_and_cover() {
    let o = run(["biassoc", "pp-poset", "--n", "1", "--m", "2", "--dot"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("digraph"));
    assert_eq!(o.stdout.lines().filter(|l| l.contains("[label=")).count(), 7);
    assert_eq!(o.stdout.lines().filter(|l| l.contains("->")).count(), 7);
    let o = run(["biassoc", "kk-poset", "--n", "0", "--m", "3", "--dot"]);
    assert_eq!(o.stdout.lines().filter(|l| l.contains("[label=")).count(), 5);
}

#[test]
fn documented_examples() {
    let v = json(&["join-table", "--m", "2", "--n", "2", "--s", "2"]);
    assert_eq!(v["payload"]["rows"].as_array().unwrap().len(), 14);
    let v = json(&["boundary", "--gen", "2,2"]);
    assert_eq!(v["payload"]["count"], 2);
    let v = json(&["fvector", "--kk", "2,3"]);
    assert_eq!(v["payload"]["f"], serde_json::json!([7, 7, 1]));
    let v = json(&["--notation", "fraction", "boundary", "--gen", "2,2"]);
    assert!(v["payload"]["terms"].as_array().unwrap().iter().any(|t| t == "θ₁²/θ₂¹"));
}

#[test]
fn json_indent_flag() {
    let compact = run(["biassoc", "--json-indent", "0", "faces", "--n", "2"]);
    assert_eq!(compact.stdout.lines().count(), 1);
    let wide = run(["biassoc", "--json-indent", "4", "faces", "--n", "2"]);
    assert!(wide.stdout.contains("\n    \"checks\""));
    let a: Value = serde_json::from_str(&compact.stdout).unwrap();
    let b: Value = serde_json::from_str(&wide.stdout).unwrap();
    assert_eq!(a, b);
}
