use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use posgame::geography::samples;
use tempfile::TempDir;

fn posgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posgame")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn reduced(dir: &TempDir, name: &str, geo: &str) -> PathBuf {
    let input = file(dir, &format!("{name}.geo.json"), geo);
    let output = dir.path().join(format!("{name}.json"));
    let out = posgame(&["reduce", "-i", s(&input), "-o", s(&output)]);
    assert!(out.status.success(), "{}", stderr(&out));
    output
}

#[test]
fn validate_reports_the_failed_condition() {
    let dir = TempDir::new().unwrap();
    let broken = file(
        &dir,
        "broken.json",
        r#"{"nodes":["s","v1","v2"],"arcs":[{"tail":"s","head":"v1"},{"tail":"s","head":"v2"}],"start":"s"}"#,
    );
    let out = posgame(&["validate", "-i", s(&broken)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("start node s must have in-degree 0 and out-degree 1"));
    assert!(stdout(&out).contains("\"valid\": false"));

    let good = file(&dir, "g1.json", &samples::cycle_alice().to_json_string());
    assert_eq!(posgame(&["validate", "-i", s(&good)]).status.code(), Some(0));

    let garbage = file(&dir, "garbage.json", "{");
    assert_eq!(posgame(&["validate", "-i", s(&garbage)]).status.code(), Some(2));
    assert_eq!(posgame(&["validate", "-i", "/nonexistent/x.json"]).status.code(), Some(2));
}

#[test]
fn solve_geo_names_the_winner() {
    let dir = TempDir::new().unwrap();
    let g2 = file(&dir, "g2.json", &samples::cycle_bob().to_json_string());
    let out = posgame(&["solve-geo", "-i", s(&g2)]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"winner\": \"Bob\""));
    assert_eq!(posgame(&["solve-geo", "-i", s(&g2), "--budget", "1"]).status.code(), Some(3));
}

#[test]
fn reduce_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let input = file(&dir, "nine.json", &samples::nine_nodes().to_json_string());
    let run = |tag: &str| {
        let (o, m, d) = (dir.path().join(format!("{tag}.json")), dir.path().join(format!("{tag}.meta.json")), dir.path().join(format!("{tag}.dot")));
        let out = posgame(&["reduce", "-i", s(&input), "--variant", "rank4", "-o", s(&o), "--meta", s(&m), "--dot", s(&d)]);
        assert!(out.status.success(), "{}", stderr(&out));
        [o, m, d].map(|p| std::fs::read(p).unwrap())
    };
    let first = run("a");
    assert_eq!(first, run("b"));
    let board: serde_json::Value = serde_json::from_slice(&first[0]).unwrap();
    assert_eq!(board["vertices"].as_array().unwrap().len(), 67);
    let meta: serde_json::Value = serde_json::from_slice(&first[1]).unwrap();
    let b11: Vec<&str> = meta["nodes"]
        .as_object()
        .unwrap()
        .iter()
        .filter(|(_, n)| n["type"] == "B11")
        .map(|(k, _)| k.as_str())
        .collect();
    assert_eq!(b11, ["v5", "v8"]);
    assert!(String::from_utf8(first[2].clone()).unwrap().starts_with("digraph"));

    let out = posgame(&["reduce", "-i", s(&input), "--variant", "mm-uniform"]);
    assert!(out.status.success());
    assert_eq!(posgame(&["reduce", "-i", s(&input), "--variant", "rank5"]).status.code(), Some(2));
}

#[test]
fn solve_both_conventions() {
    let dir = TempDir::new().unwrap();
    let board = reduced(&dir, "g1", &samples::cycle_alice().to_json_string());
    let out = posgame(&["solve", "-i", s(&board), "--convention", "mb"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["outcome"], "MakerWin");
    assert!(!report["principal_variation"].as_array().unwrap().is_empty());

    let out = posgame(&["solve", "-i", s(&board), "--convention", "mm"]);
    assert!(stdout(&out).contains("\"outcome\": \"FPWin\""));

    // Maker wastes the first pick on a fresh interior vertex.
    let out = posgame(&["solve", "-i", s(&board), "--convention", "mb", "--moves", "s.y1,a.p"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(posgame(&["solve", "-i", s(&board), "--convention", "mb", "--moves", "nope"]).status.code(), Some(2));
    assert_eq!(posgame(&["solve", "-i", s(&board), "--convention", "mm", "--budget", "1"]).status.code(), Some(3));

    let with_workers = posgame(&["solve", "-i", s(&board), "--convention", "mb", "--workers", "4"]);
    assert!(stdout(&with_workers).contains("\"outcome\": \"MakerWin\""));
}

#[test]
fn verify_passes_on_the_small_cycle() {
    let dir = TempDir::new().unwrap();
    let g1 = file(&dir, "g1.json", &samples::cycle_alice().to_json_string());
    let out = posgame(&["verify", "-i", s(&g1), "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["equivalence"]["maker_breaker"], "MakerWin");
    assert_eq!(report["equivalence"]["maker_maker"], "FPWin");
    assert_eq!(report["equivalence"]["consistent"], true);
    assert_eq!(stdout(&posgame(&["verify", "-i", s(&g1), "--suite", "all"])), stdout(&out));

    assert_eq!(posgame(&["verify", "--suite", "gadgets"]).status.code(), Some(0));
    assert_eq!(posgame(&["verify", "--suite", "mb"]).status.code(), Some(2));
    assert_eq!(posgame(&["verify", "-i", s(&g1), "--suite", "mb", "--budget", "1"]).status.code(), Some(3));
}

#[test]
fn losing_side_counterexample_replays_through_solve() {
    let dir = TempDir::new().unwrap();
    let g1 = samples::cycle_alice().to_json_string();
    let board = reduced(&dir, "g1", &g1);
    let g1 = file(&dir, "g1.geo.json", &g1);
    let out = posgame(&["verify", "-i", s(&g1), "--suite", "mb"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cx = &report["maker_breaker"]["breaker"]["counterexample"];
    let moves: Vec<&str> = cx["moves"].as_array().unwrap().iter().map(|m| m.as_str().unwrap()).collect();
    let joined = moves.join(",");
    let out = posgame(&["solve", "-i", s(&board), "--convention", "mb", "--moves", &joined]);
    // Either the line already ends in a fill or Maker still wins from it.
    assert!(
        stderr(&out).contains("already fill") || stdout(&out).contains("\"outcome\": \"MakerWin\""),
        "{}",
        stderr(&out)
    );
}

#[test]
fn pair_finds_or_refutes() {
    let dir = TempDir::new().unwrap();
    let paired = file(&dir, "paired.json", r#"{"vertices":["a","b","c","d"],"edges":[["a","b","c"],["c","d"]]}"#);
    let out = posgame(&["pair", "-i", s(&paired)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("\"valid\": true"));

    let triangle = file(&dir, "triangle.json", r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"],["a","c"]]}"#);
    let out = posgame(&["pair", "-i", s(&triangle)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"complete\": true"));
}
