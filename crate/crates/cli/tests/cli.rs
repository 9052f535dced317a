use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

/// The printed 16 x 6 binary array of the six-element example.
const BINARY6: &str = "000000 100101 010101 110000 001101 101000 011000 111101 \
                   000011 100110 010110 110011 001110 101011 011011 111110";

fn csv(labels: &str, rows: &str) -> String {
    let mut s = format!("{labels}\n");
    for r in rows.split_whitespace() {
        let cells: Vec<String> = r.chars().map(String::from).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matroidal")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Ws {
    dir: TempDir,
}

impl Ws {
    fn new() -> Ws {
        let ws = Ws { dir: TempDir::new().unwrap() };
        ws.write("golden.csv", &csv("1,2,3,4,5,6", BINARY6));
        let o = ws.run(&["matroid", "build", "--kind", "example1", "--out", "m6.json"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        ws
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, text: &str) {
        fs::write(self.path(name), text).unwrap();
    }

    fn read(&self, name: &str) -> String {
        fs::read_to_string(self.path(name)).unwrap()
    }

    fn run(&self, args: &[&str]) -> Output {
        run(self.dir.path(), args)
    }
}

fn data_rows(text: &str) -> Vec<String> {
    let mut rows: Vec<String> = text.lines().skip(1).map(|l| l.replace(',', "")).collect();
    rows.sort();
    rows
}

#[test]
fn golden_array_verifies() {
    let ws = Ws::new();
    let o = ws.run(&["voa", "verify", "--array", "golden.csv", "--matroid", "m6.json", "--v", "2", "--lemma1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("pass: 16 x 6"));
    assert!(stdout(&o).contains("bases: 11 checked, 0 failing"));
}

#[test]
fn corrupted_array_fails_with_a_witness() {
    let ws = Ws::new();
    let mut text = ws.read("golden.csv");
    text = text.replacen("0,0,0,0,0,0", "1,0,0,0,0,0", 1);
    ws.write("bad.csv", &text);
    let o = ws.run(&["voa", "verify", "--array", "bad.csv", "--matroid", "m6.json", "--v", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fail: columns {1}"), "{}", stdout(&o));
}

#[test]
fn malformed_inputs_exit_2_with_a_position() {
    let ws = Ws::new();
    ws.write("bad.csv", "1,2,3,4,5,6\n0,0,0,0,0,0\n0,0,x,0,0,0\n");
    let o = ws.run(&["voa", "verify", "--array", "bad.csv", "--matroid", "m6.json", "--v", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    ws.write("bad.json", "{\"n\": 2,\n \"rank\": [}");
    let o = ws.run(&["matroid", "check", "--matroid", "bad.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2 column"), "{}", stderr(&o));
    let o = ws.run(&["voa", "verify", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn axiom_violations_exit_1() {
    let ws = Ws::new();
    // r({1}) = 1, r({2}) = 1, r({1,2}) = 0 breaks monotonicity
    ws.write("m.json", r#"{"n": 2, "rank": {"0": 0, "1": 1, "2": 1, "3": 0}}"#);
    let o = ws.run(&["matroid", "check", "--matroid", "m.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violation"));
    let o = ws.run(&["matroid", "check", "--matroid", "m6.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"regular\": true"));
}

#[test]
fn f7star_search_is_exhausted() {
    let ws = Ws::new();
    let o = ws.run(&["search", "f7star"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("exhausted 13824, none valid"), "{}", stdout(&o));
}

#[test]
fn backtracking_search_from_a_file() {
    let ws = Ws::new();
    ws.run(&["matroid", "build", "--kind", "uniform", "--t", "2", "--n", "4", "--out", "u24.json"]);
    let o = ws.run(&["search", "voa", "--matroid", "u24.json", "--v", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"outcome\": \"exhausted\""));
    let o = ws.run(&["search", "voa", "--matroid", "u24.json", "--v", "3", "--out", "t.csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = ws.run(&["voa", "verify", "--array", "t.csv", "--matroid", "u24.json", "--v", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn minors_reproduce_the_printed_arrays() {
    let ws = Ws::new();
    let o = ws.run(&[
        "voa", "delete", "--array", "golden.csv", "--v", "2", "--matroid", "m6.json", "--delete", "5,6", "--out", "t1.csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(data_rows(&ws.read("t1.csv")), data_rows(&csv("1,2,3,4", "0000 1001 0101 1100 0011 1010 0110 1111")));
    ws.run(&["matroid", "minor", "--matroid", "m6.json", "--delete", "5,6", "--out", "m1.json"]);
    let o = ws.run(&[
        "voa", "contract", "--array", "t1.csv", "--v", "2", "--matroid", "m1.json", "--contract", "4", "--at", "0",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(data_rows(&stdout(&o)), data_rows(&csv("1,2,3", "000 110 101 011")));
}

#[test]
fn series_connection_is_verified_before_writing() {
    let ws = Ws::new();
    ws.write("t1.csv", &csv("1,2,3,4", "0000 1001 0101 1100 0011 1010 0110 1111"));
    ws.write("t2.csv", &csv("4,5,6", "000 110 101 011"));
    ws.write("u.csv", &csv("1,2,3", "000 011 101 110"));
    ws.run(&["matroid", "build", "--kind", "uniform", "--t", "3", "--n", "4", "--out", "m1.json"]);
    ws.run(&["matroid", "build", "--kind", "uniform", "--t", "2", "--n", "3", "--labels", "4,5,6", "--out", "m2.json"]);
    let base = ["--t1", "t1.csv", "--p1", "4", "--t2", "t2.csv", "--p2", "4", "--v", "2", "--m1", "m1.json", "--m2", "m2.json"];
    let mut args = vec!["voa", "series"];
    args.extend(base);
    args.extend(["--u", "u.csv", "--out", "s.csv"]);
    let o = ws.run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = ws.read("s.csv");
    assert_eq!(s.lines().count(), 33);
    assert!(s.contains("\n1,0,0,1,1,1\n"));
    let mut args = vec!["voa", "parallel"];
    args.extend(base);
    args.extend(["--out", "p.csv"]);
    let o = ws.run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = ws.run(&["voa", "verify", "--array", "p.csv", "--matroid", "m6.json", "--v", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn row_guard_refuses_before_writing() {
    let ws = Ws::new();
    let o = ws.run(&["voa", "build", "--v", "5", "--kind", "whirl", "--r", "6", "--max-rows", "1000", "--out", "w.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--max-rows"));
    assert!(!ws.path("w.csv").exists());
    let o = ws.run(&["voa", "build", "--v", "5", "--kind", "whirl", "--r", "3", "--out", "w.csv", "--matroid-out", "w.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = ws.run(&["voa", "entropy", "--array", "w.csv", "--v", "5", "--matroid", "w.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn graph_and_matrix_builders() {
    let ws = Ws::new();
    let o = ws.run(&["voa", "build", "--v", "3", "--edges", "0-1,1-2,2-0,0-3,3-2", "--out", "g.csv", "--matroid-out", "g.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(ws.read("g.csv").lines().count(), 28);
    // determinant 2 is not a unit modulo 2
    ws.write("a.txt", "1 1\n-1 1\n");
    let o = ws.run(&["voa", "build", "--v", "2", "--matrix", "a.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a unit"), "{}", stderr(&o));
    let o = ws.run(&["voa", "build", "--v", "3", "--matrix", "a.txt"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn oa_builders_and_catalog() {
    let ws = Ws::new();
    let o = ws.run(&["oa", "catalog343", "--out-dir", "cat"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_dir(ws.path("cat")).unwrap().count(), 24);
    let o = ws.run(&["oa", "build", "--t", "2", "--n", "4", "--v", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 10);
    let o = ws.run(&["oa", "build", "--t", "2", "--n", "4", "--v", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classification_report() {
    let ws = Ws::new();
    let o = ws.run(&["classify", "--kind", "uniform", "--t", "2", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["undecided"]["levels"], serde_json::json!([10]));
    assert_eq!(j["known_out"]["levels"], serde_json::json!([2, 3, 6]));
    ws.write(
        "e.json",
        r#"{"op": "two_sum",
            "left": {"op": "leaf", "matroid": {"kind": "wheel", "r": 3}}, "p1": "a1",
            "right": {"op": "leaf", "matroid": {"kind": "whirl", "r": 3}}, "p2": "a1"}"#,
    );
    let o = ws.run(&["classify", "--expr", "e.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["exact"], true);
    assert_eq!(j["summary"]["known_in"], "{v ≥ 3, v ∉ {6}}");
}

#[test]
fn dual_round_trip() {
    let ws = Ws::new();
    ws.run(&["matroid", "dual", "--matroid", "m6.json", "--out", "d.json"]);
    ws.run(&["matroid", "dual", "--matroid", "d.json", "--out", "dd.json"]);
    assert_eq!(ws.read("dd.json"), ws.read("m6.json"));
}

#[test]
fn combination_network_code() {
    let ws = Ws::new();
    let o = ws.run(&["netcode", "combination", "--v", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["sinks"].as_array().unwrap().len(), 6);
    let o = ws.run(&["netcode", "combination", "--v", "2"]);
    assert_eq!(o.status.code(), Some(2));
}
