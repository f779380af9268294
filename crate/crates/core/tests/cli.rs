use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use colline::io::history_to_json;
use colline::simulate::{extract_history, generate_banded, ordering_timeline_oracle, TrajectorySet};

fn colline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colline"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn simulated_history_recovers_to_the_true_timeline() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("traj.json");
    let hist = dir.path().join("hist.json");
    let out = colline(&[
        "simulate", "--n", "6", "--segments", "4", "--seed", "3",
        "--out", path(&traj), "--history-out", path(&hist),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let ts: TrajectorySet = serde_json::from_str(&std::fs::read_to_string(&traj).unwrap()).unwrap();
    let expected = ordering_timeline_oracle(&ts).unwrap();
    let h = extract_history(&ts).unwrap();
    if !h.underlying_graph().is_connected() {
        return;
    }

    let out = colline(&["recover", "--history", path(&hist), "--timeline"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let got: Vec<Vec<usize>> = serde_json::from_value(json(&out)["timeline"].clone()).unwrap();
    let forward: Vec<Vec<usize>> = expected.orderings().iter().map(|o| o.as_slice().to_vec()).collect();
    let backward: Vec<Vec<usize>> = forward
        .iter()
        .map(|o| o.iter().rev().copied().collect())
        .collect();
    assert!(got == forward || got == backward);
}

#[test]
fn disconnected_history_exits_with_structure_code() {
    let dir = tempfile::tempdir().unwrap();
    let ts = generate_banded(&[2, 3], 3, 11).unwrap();
    let h = extract_history(&ts).unwrap();
    assert!(!h.underlying_graph().is_connected());
    let hist = dir.path().join("hist.json");
    std::fs::write(&hist, history_to_json(&h)).unwrap();

    let out = colline(&["recover", "--history", path(&hist), "--timeline"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let out = colline(&["recover", "--history", path(&hist)]);
    assert!(out.status.success());
    assert_eq!(json(&out)["components"].as_array().unwrap().len(), 2);
}

#[test]
fn interleave_agrees_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    std::fs::write(&inst, r#"{"k":3,"l":3,"ix":[[0,2]],"iy":[[0,1],[1,2]]}"#).unwrap();
    let out = colline(&["interleave", "--instance", path(&inst), "--oracle"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["B"], v["oracle"]["B"]);
    assert_eq!(v["positions"].as_array().unwrap().len(), 3);
}

#[test]
fn layers_writes_dot_and_keeps_stdout_json() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("p4.json");
    let dot = dir.path().join("p4.dot");
    std::fs::write(&graph, r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#).unwrap();
    let out = colline(&["layers", "--graph", path(&graph), "--dot", path(&dot)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let layers = &json(&out)["components"][0]["layers"];
    assert_eq!(layers.as_array().unwrap().len(), 2);
    assert!(std::fs::read_to_string(&dot).unwrap().contains("0 -- 1"));

    let out = colline(&["sandwich", "--graph", path(&graph)]);
    assert_eq!(json(&out)["holds"], true);
}

#[test]
fn error_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(colline(&["layers"]).status.code(), Some(1));

    let garbage = dir.path().join("bad.json");
    std::fs::write(&garbage, "not json").unwrap();
    assert_eq!(colline(&["recognize", "--graph", path(&garbage)]).status.code(), Some(2));

    let c5 = dir.path().join("c5.json");
    std::fs::write(&c5, r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[0,4]]}"#).unwrap();
    assert_eq!(colline(&["layers", "--graph", path(&c5)]).status.code(), Some(3));
    let out = colline(&["recognize", "--graph", path(&c5)]);
    assert!(out.status.success());
    assert_eq!(json(&out)["function_graph"], false);

    let big = dir.path().join("big.json");
    std::fs::write(&big, r#"{"n":12,"edges":[[0,1]]}"#).unwrap();
    assert_eq!(colline(&["bandwidth", "--graph", path(&big)]).status.code(), Some(4));
}
