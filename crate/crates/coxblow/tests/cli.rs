mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use common::corpus_dir;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxblow")).args(args).output().expect("binary runs")
}

fn corpus(name: &str) -> String {
    corpus_dir().join(name).to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

fn temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coxblow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn blowup_report_and_exit_zero() {
    let out = run(&["blowup", &corpus("a3-minimal.json"), "--assert", "F", "--assert", "M2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["kind"], "blowup");
    assert_eq!(r["results"]["s_sharp"].as_array().unwrap().len(), 5);
    assert_eq!(r["results"]["l_sharp"]["vertex_count"], 5);
}

#[test]
fn empty_collection_gives_the_coxeter_presentation() {
    let r = json(&run(&["blowup", &corpus("a2-empty.json")]));
    let rels = r["results"]["presentation"]["relators"].as_array().unwrap();
    assert_eq!(rels.len(), 3);
    assert!(rels.contains(&serde_json::json!(["a", "b", "a", "b", "a", "b"])));
    assert!(rels.contains(&serde_json::json!(["a", "a"])));
}

#[test]
fn failed_assertion_exits_two() {
    let out = run(&["check-gluing", &corpus("square-counterexample.json"), "--assert", "M2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("M2"));
    let r = json(&out);
    assert_eq!(r["verdicts"]["M2"], false);
}

#[test]
fn input_errors_exit_three() {
    let bad_schema = temp("bad-schema.json", r#"{"schema": 2, "kind": "minkowski"}"#);
    assert_eq!(run(&["minkowski", bad_schema.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(run(&["minkowski", "/nonexistent/file.json"]).status.code(), Some(3));
    assert_eq!(run(&["blowup", &corpus("minkowski.json")]).status.code(), Some(3));
    let asym = temp(
        "asym.json",
        r#"{"schema": 1, "kind": "blowup", "generators": ["a","b"], "matrix": [["1","3"],["4","1"]]}"#,
    );
    assert_eq!(run(&["blowup", asym.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(run(&["blowup", &corpus("a3-minimal.json"), "--assert", "nonsense"]).status.code(), Some(3));
    assert_eq!(run(&["blowup", &corpus("a3-minimal.json"), "--dot", "nonsense"]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(3));
}

#[test]
fn capped_enumeration_exits_four() {
    let free = temp(
        "free.json",
        r#"{"schema": 1, "kind": "enumerate", "generators": ["a","b"], "relators": [["a","a"],["b","b"]]}"#,
    );
    let out = run(&["enumerate", free.to_str().unwrap(), "--max-cosets", "200"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["results"]["status"], "capped");
}

#[test]
fn enumerate_counterexample_has_order_fourteen() {
    let r = json(&run(&["enumerate", &corpus("square-counterexample.json")]));
    assert_eq!(r["results"]["order"], 14);
}

#[test]
fn classify_three_dimensional_family() {
    let r = json(&run(&["classify-assoc", &corpus("assoc-dim3.json")]));
    assert_eq!(r["results"]["weak_classes"].as_array().unwrap().len(), 4);
    assert_eq!(r["results"]["classes"].as_array().unwrap().len(), 5);
    let w = &r["results"]["witnesses"]["(4,3,3) (3,4,3)"];
    assert_eq!(w["necessary"], true);
    assert_eq!(w["sufficient"], false);
    assert!(w["witness"].is_null());
}

#[test]
fn report_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("coxblow-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for p in [&a, &b] {
        let out = run(&["check-gluing", &corpus("square-counterexample.json"), "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

fn dot(args: &[&str]) -> String {
    let dir = std::env::temp_dir().join(format!("coxblow-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{}.dot", args[2]));
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--out", "/dev/null", "--dot-out", path.to_str().unwrap()]);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::read_to_string(path).unwrap()
}

fn counts(dot: &str) -> (usize, usize) {
    (dot.lines().filter(|l| l.contains("[label=") && !l.contains("--")).count(), dot.lines().filter(|l| l.contains(" -- ")).count())
}

#[test]
fn pentagon_link_as_dot() {
    let d = dot(&["blowup", &corpus("a3-minimal.json"), "--dot", "l_sharp"]);
    assert!(d.starts_with("graph \"l_sharp\" {"));
    assert_eq!(counts(&d), (5, 5));
}

#[test]
fn dihedral_ball_as_dot() {
    let d = dot(&["enumerate", &corpus("square-counterexample-enumerate.json"), "--dot", "cayley"]);
    let (nodes, edges) = counts(&d);
    assert_eq!(nodes, 14);
    assert!(edges > 0);
    assert!(d.contains("color="));
}

#[test]
fn pentagon_crossing_graph_as_dot() {
    // Five diagonals of the pentagon; each crosses exactly two others.
    let d = dot(&["classify-assoc", &corpus("assoc-dim2.json"), "--dot", "crossing"]);
    assert_eq!(counts(&d), (5, 5));
}
