use std::path::PathBuf;
use std::process::Command;

use pgraph_core::catalog;
use pgraph_core::graph_file::{ElementRecord, GraphFile, PointRecord};
use pgraph_core::groupoid::FiniteGroupoid;
use pgraph_core::filters::FilterSpace;
use pgraph_core::degree::Degree;
use serde_json::Value;
use tempfile::TempDir;

const E1: &str = r#"{
  "monoid": {"kind": "grid", "k": 1},
  "presentation": "explicit",
  "vertices": ["v", "w"],
  "morphisms": [{"id": "e", "range": "v", "source": "w", "degree": [1]}],
  "sets": {"at_v": {"K1": ["v"]}}
}"#;

const E3: &str = r#"{
  "monoid": {"kind": "grid", "k": 2},
  "window": [1, 1],
  "presentation": "skeleton",
  "rank": 2,
  "vertices": ["u"],
  "edges": [
    {"id": "b", "color": 1, "range": "u", "source": "u"},
    {"id": "r", "color": 2, "range": "u", "source": "u"}
  ],
  "squares": [[["r", "b"], ["b", "r"]]]
}"#;

const TWISTED_CORRUPTED: &str = r#"{
  "monoid": {"kind": "grid", "k": 2},
  "window": [1, 1],
  "presentation": "skeleton",
  "rank": 2,
  "vertices": ["u"],
  "edges": [
    {"id": "a1", "color": 1, "range": "u", "source": "u"},
    {"id": "a2", "color": 1, "range": "u", "source": "u"},
    {"id": "c", "color": 2, "range": "u", "source": "u"}
  ],
  "squares": [[["a1", "c"], ["c", "a2"]], [["a2", "c"], ["c", "a2"]]]
}"#;

const TWO_FACTORIZATIONS: &str = r#"{
  "monoid": {"kind": "grid", "k": 1},
  "presentation": "explicit",
  "vertices": ["u"],
  "morphisms": [
    {"id": "a", "range": "u", "source": "u", "degree": [1]},
    {"id": "b", "range": "u", "source": "u", "degree": [1]},
    {"id": "ab", "range": "u", "source": "u", "degree": [2]}
  ],
  "compositions": [["a", "b", "ab"], ["b", "a", "ab"], ["a", "a", "ab"], ["b", "b", "ab"]]
}"#;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn pgraph(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_pgraph"))
        .args(args)
        .output()
        .expect("the binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

fn fixture(dir: &TempDir, name: &str, text: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    std::fs::write(&path, text).expect("fixture written");
    path.to_str().expect("utf-8 path").to_owned()
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).expect("valid JSON on stdout")
}

#[test]
fn e1_validates() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "e1.json", E1);
    let run = pgraph(&["validate", &f]);
    assert_eq!(run.code, 0, "{}{}", run.stdout, run.stderr);
    assert!(run.stdout.contains("unique factorization: ok"));
    assert_eq!(json(&pgraph(&["validate", &f, "--json"]))["ok"], true);
}

#[test]
fn corrupted_square_fails_with_counterexample() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "bad.json", TWISTED_CORRUPTED);
    let run = pgraph(&["validate", &f]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("counterexample"), "{}", run.stdout);
}

#[test]
fn double_factorization_is_a_ufp_counterexample() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "ab.json", TWO_FACTORIZATIONS);
    let run = pgraph(&["validate", &f]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("unique factorization: FAIL"), "{}", run.stdout);
    let report = json(&pgraph(&["validate", &f, "--json"]));
    let violations = report["ufp"]["violations"].as_array().unwrap();
    assert!(violations.iter().any(|v| v["morphism"] == "ab" && v["factorizations"].as_u64() > Some(1)));
}

#[test]
fn bad_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let malformed = fixture(&dir, "mal.json", "{\"presentation\": ");
    assert_eq!(pgraph(&["validate", &malformed]).code, 2);
    let missing = dir.path().join("absent.json");
    assert_eq!(pgraph(&["validate", missing.to_str().unwrap()]).code, 2);
    let unknown_vertex = fixture(
        &dir,
        "dangling.json",
        r#"{"monoid": {"kind": "grid", "k": 1}, "presentation": "explicit", "vertices": ["v"],
            "morphisms": [{"id": "e", "range": "v", "source": "nowhere", "degree": [1]}]}"#,
    );
    assert_eq!(pgraph(&["validate", &unknown_vertex]).code, 2);
    let e1 = fixture(&dir, "e1.json", E1);
    assert_eq!(pgraph(&["groupoid", &e1, "--bound", "1,1"]).code, 2);
    assert_eq!(pgraph(&["groupoid", &e1, "--reduce", "nope"]).code, 2);
    assert_eq!(pgraph(&["frobnicate"]).code, 2);
    assert_eq!(pgraph(&["--help"]).code, 0);
}

#[test]
fn e1_paths() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "e1.json", E1);
    let run = pgraph(&["paths", &f, "--space", "filters"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, "3 filters\n{v}\n{w}\n{v,e}\n");
    let run = pgraph(&["paths", &f, "--boundary"]);
    assert!(run.stdout.contains("2 boundary filters\n{w}\n{v,e}\n"), "{}", run.stdout);
    let run = pgraph(&["paths", &f, "--space", "morphisms"]);
    assert!(run.stdout.starts_with("3 graph morphisms\n"), "{}", run.stdout);
    let points = json(&pgraph(&["paths", &f, "--space", "morphisms", "--boundary", "--json"]));
    assert_eq!(points["points"].as_array().unwrap().len(), 2);
}

#[test]
fn e1_groupoid() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "e1.json", E1);
    for space in ["filters", "morphisms"] {
        let run = pgraph(&["groupoid", &f, "--bound", "1", "--space", space]);
        assert_eq!(run.code, 0);
        assert!(run.stdout.starts_with("5 elements"), "{}", run.stdout);
    }
    let run = pgraph(&["groupoid", &f, "--reduce", "boundary"]);
    assert!(run.stdout.contains("4 elements"), "{}", run.stdout);
    let run = pgraph(&["groupoid", &f, "--reduce", "at_v"]);
    assert!(run.stdout.contains("2 elements"), "{}", run.stdout);
}

#[test]
fn e1_conjugacy_and_iso() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "e1.json", E1);
    let run = pgraph(&["conjugacy", &f]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let run = pgraph(&["iso", &f, "--bound", "1"]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert!(!run.stdout.contains("FAIL"));
}

#[test]
fn e3_checks_pass() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "e3.json", E3);
    for cmd in ["validate", "conjugacy", "iso"] {
        let run = pgraph(&[cmd, &f]);
        assert_eq!(run.code, 0, "{cmd}: {}{}", run.stdout, run.stderr);
    }
    let run = pgraph(&["paths", &f, "--window", "2,1", "--boundary"]);
    assert!(run.stdout.contains("depth bound: (2,1)"), "{}", run.stdout);
    assert!(run.stdout.contains("1 boundary filter\n"), "{}", run.stdout);
}

#[test]
fn groupoid_json_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "e1.json", E1);
    let value = json(&pgraph(&["groupoid", &f, "--bound", "1", "--json"]));
    let records: Vec<ElementRecord> = serde_json::from_value(value["elements"].clone()).unwrap();
    let g = catalog::e1();
    let fs = FilterSpace::new(&g);
    let index = |p: &PointRecord| p.to_filter(&g).ok().and_then(|x| fs.index_of(&x));
    let resolved: Vec<_> = records.iter().map(|r| r.resolve(&fs, index).unwrap()).collect();
    let expected = FiniteGroupoid::from_space(&fs, &Degree::grid([1])).unwrap();
    assert_eq!(resolved, expected.elements());
}

#[test]
fn export_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "e3.json", E3);
    let run = pgraph(&["export", &f]);
    assert_eq!(run.code, 0);
    let exported = fixture(&dir, "explicit.json", &run.stdout);
    let file = GraphFile::parse(&run.stdout).unwrap();
    assert_eq!(file.build(None).unwrap().len(), catalog::e3(&Degree::grid([1, 1])).len());
    assert_eq!(pgraph(&["paths", &f]).stdout, pgraph(&["paths", &exported]).stdout);
    let dot = pgraph(&["export", &f, "--dot"]);
    assert!(dot.stdout.starts_with("digraph"));
    let dot = pgraph(&["paths", &f, "--dot"]);
    assert!(dot.stdout.contains("->"));
}
