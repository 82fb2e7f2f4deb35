use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treegraph")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn analyze_cycle3() {
    let out = run(&["analyze", "--builtin", "builtin:cycle:3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tree_count"], 9);
    let table = v["multiplicities"].as_array().unwrap();
    assert_eq!(table.len(), 4);
    assert!(table.iter().all(|r| r["m"] == 1));
    assert_eq!(table.iter().filter(|r| r["W"].as_array().unwrap().len() == 2).count(), 3);
    assert_eq!(v["degree_identity"]["holds"], true);
}

#[test]
fn analyze_complete4() {
    let v = json(&run(&["analyze", "--builtin", "complete:4"]));
    for r in v["multiplicities"].as_array().unwrap() {
        let k = r["W"].as_array().unwrap().len() as u64;
        let expected = if k == 4 { 1 } else { (k - 1) * 3u64.pow(3 - k as u32) };
        assert_eq!(r["m"].as_u64().unwrap(), expected);
    }
}

#[test]
fn not_strongly_connected_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "path.json", r#"{"vertices":["a","b","c"],"edges":[{"s":0,"t":1},{"s":1,"t":2}]}"#);
    let out = run(&["analyze", "--input", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not strongly connected"));
    // the tree graph is still available
    assert_eq!(run(&["treegraph", "--input", &path]).status.code(), Some(0));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"vertices\": [\"a\"],\n \"edges\": [{\"s\": 0, \"t\": 4}]}");
    let out = run(&["analyze", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("edges"));
    let broken = write(dir.path(), "broken.json", "{\"vertices\": [\"a\"],\n \"edges\": [");
    let out = run(&["analyze", "--input", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["analyze", "--builtin", "wheel:3"]).status.code(), Some(2));
}

#[test]
fn guard_exits_3() {
    let out = run(&["treegraph", "--builtin", "complete:4", "--max-trees", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["verify", "--builtin", "complete:4", "--symbolic"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn treegraph_outputs() {
    let v = json(&run(&["treegraph", "--builtin", "complete:3"]));
    assert_eq!(v["tree_graph"]["trees"].as_array().unwrap().len(), 9);
    assert_eq!(v["tree_graph"]["edges"].as_array().unwrap().len(), 18);
    assert_eq!(v["eulerian"]["eulerian"], true);
    assert_eq!(v["cycle_partition"]["covered_once"], true);
    let v = json(&run(&["treegraph", "--builtin", "cycle:3"]));
    assert_eq!(v["tree_graph"]["trees"].as_array().unwrap().len(), 9);
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("tg.dot");
    let out = run(&["treegraph", "--builtin", "cycle:3", "--format", "dot", "--out", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(dot).unwrap().starts_with("digraph"));
}

#[test]
fn verify_builtins_pass() {
    for name in ["cycle:4", "complete:4", "figure", "bouquet:2,2"] {
        let out = run(&["verify", "--builtin", name]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["holds"], true);
    }
    let v = json(&run(&["verify", "--builtin", "hypercube:2"]));
    let stanley = v["builtin_checks"].as_array().unwrap().iter().find(|c| c["name"] == "Stanley count by matrix-tree").unwrap().clone();
    assert_eq!(stanley["actual"], "16");
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "--builtin", "cycle:4", "--seed", "42"]);
    let b = run(&["verify", "--builtin", "cycle:4", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "--builtin", "cycle:4", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(json(&a)["main_theorem"]["trials"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_multigraph_through_subdivision() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "multi.json",
        r#"{"vertices":["1","2"],"edges":[{"s":0,"t":1},{"s":0,"t":1},{"s":1,"t":0}],"multi":true}"#,
    );
    let out = run(&["verify", "--input", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["graph"]["vertices"], 5);
    assert_eq!(v["graph"]["subdivided"], true);
    assert_eq!(v["subdivision"][0]["holds"], true);
}

#[test]
fn text_format() {
    let out = run(&["verify", "--builtin", "cycle:3", "--format", "text", "--trials", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("overall: ok"));
    assert_eq!(run(&["verify", "--builtin", "cycle:3", "--trials", "0"]).status.code(), Some(2));
}
