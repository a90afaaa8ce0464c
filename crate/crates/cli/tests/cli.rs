use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use opaque_cli::io::{InputDocument, OutputDocument};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_opaque-cover"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("opaque-cover-tests-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TRIANGLE: &str = r#"{"segments": [[[0,0],[4,0]], [[4,0],[0,4]], [[0,4],[0,0]]]}"#;
const PINWHEEL: &str = r#"{"segments": [[[-2,0],[-2,-2]], [[1,1],[-1,1]], [[3,-3],[3,0]]]}"#;

#[test]
fn triangle_coverage() {
    let input = scratch("triangle.json", TRIANGLE);
    let svg = input.with_extension("svg");
    let o = run(&["coverage", input.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = OutputDocument::parse(&stdout(&o)).unwrap();
    assert_eq!(doc.regions.len(), 1);
    assert_eq!(doc.regions[0].area, "8");
    assert_eq!(doc.regions[0].boundary, [["0", "0"], ["4", "0"], ["0", "4"]].map(|p| p.map(String::from)));
    assert_eq!(doc.stats.n, 3);
    assert_eq!(doc.stats.m, 1);
    assert!(doc.stats.timings_us.is_none());
    assert!(fs::read_to_string(svg).unwrap().contains("<path"));
}

#[test]
fn pinwheel_coverage_with_stats() {
    let input = scratch("pinwheel.json", PINWHEEL);
    let out = input.with_extension("out.json");
    let o = run(&["coverage", input.to_str().unwrap(), "--stats", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let doc = OutputDocument::parse(&fs::read_to_string(out).unwrap()).unwrap();
    assert!(doc.regions.is_empty());
    assert_eq!(doc.isolated_points, vec![["0".to_string(), "0".to_string()]]);
    assert!(doc.stats.timings_us.is_some());
}

#[test]
fn malformed_input_exits_with_one() {
    let input = scratch("bad.json", r#"{"segments": [[[0,0],["1/0",1]]]}"#);
    let o = run(&["coverage", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("segment 0, endpoint 1, coordinate x") && err.contains("1/0"), "{err}");

    let zero = scratch("zero.json", r#"{"segments": [[[2,2],[2,2]]]}"#);
    assert_eq!(run(&["coverage", zero.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["coverage", "/nonexistent/input.json"]).status.code(), Some(1));
    assert_eq!(run(&["coverage"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn query_points() {
    let input = scratch("query.json", PINWHEEL);
    let path = input.to_str().unwrap();
    let o = run(&["query", path, "--point", "0,0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "blocked\n");
    let o = run(&["query", path, "--point", "1/50,0"]);
    assert!(stdout(&o).starts_with("clear "));
    let o = run(&["query", path, "--point", "-1/50,-1/50"]);
    assert!(stdout(&o).starts_with("clear "));
    let o = run(&["query", path, "--point", "nonsense"]);
    assert_eq!(o.status.code(), Some(1));

    let triangle = scratch("query_triangle.json", TRIANGLE);
    let o = run(&["query", triangle.to_str().unwrap(), "--point", "1,1"]);
    assert_eq!(stdout(&o), "blocked\n");
    let o = run(&["query", triangle.to_str().unwrap(), "--point", "5,5"]);
    assert!(stdout(&o).starts_with("clear "));
}

#[test]
fn generated_ngon_round_trips() {
    let o = run(&["gen", "ngon", "--n", "6", "--gap", "1/10"]);
    assert!(o.status.success());
    let doc = InputDocument::parse(&stdout(&o)).unwrap();
    assert_eq!(doc.segments.len(), 6);
    assert_eq!(doc.to_barrier().unwrap().components().len(), 6);
    assert_eq!(stdout(&run(&["gen", "ngon", "--n", "6", "--gap", "1/10"])), stdout(&o));
    assert_eq!(run(&["gen", "ngon", "--n", "2"]).status.code(), Some(1));
    assert_eq!(run(&["gen", "ngon", "--n", "5", "--gap", "1/2"]).status.code(), Some(1));
}

#[test]
fn selftest_is_deterministic() {
    let args = ["selftest", "--count", "8", "--max-segments", "4", "--bound", "6", "--seed", "11"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&run(&args)));
    assert!(stdout(&a).ends_with("selftest: 8 instances, 0 failed\n"));
}
