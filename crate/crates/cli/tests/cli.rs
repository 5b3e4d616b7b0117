use std::process::{Command, Output};

use serde_json::Value;

fn maghom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maghom"))
        .args(args)
        .env("MAGHOM_JOBS", "2")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = maghom(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn rank_at(table: &Value, k: u64, l: u64) -> u64 {
    table["entries"][format!("{k},{l}")]["rank"].as_u64().unwrap_or(0)
}

#[test]
fn complete_graph_is_diagonal() {
    let t = json(&["compute", "emh", "--family", "complete:4"]);
    for (k, want) in [(0, 4), (1, 12), (2, 24), (3, 24)] {
        assert_eq!(rank_at(&t, k, k), want);
    }
    assert_eq!(rank_at(&t, 2, 3), 0);
}

#[test]
fn four_cycle_has_off_diagonal_class() {
    let t = json(&["compute", "emh", "--family", "cycle:4", "--ring", "Z"]);
    assert!(rank_at(&t, 3, 5) > 0, "{t}");
}

#[test]
fn tournament_rmpss_passes() {
    let v = json(&["compute", "rmpss", "--family", "tournament:3"]);
    assert_eq!(v["report"]["items"].as_array().unwrap().len(), 3);
    for item in v["report"]["items"].as_array().unwrap() {
        assert_eq!(item["passed"], true, "{item}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["compute", "mpss", "--family", "cycle:4", "--lmax", "4", "--ring", "Fp:2", "--differentials"];
    let a = maghom(&args);
    let b = maghom(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(maghom(&["compute", "emh"]).status.code(), Some(2));
    assert_eq!(maghom(&["compute", "emh", "--family", "nope:1"]).status.code(), Some(2));
    assert_eq!(maghom(&["compute", "emh", "--family", "complete:3", "--ring", "Fp:4"]).status.code(), Some(2));
    assert_eq!(maghom(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(maghom(&["compute", "gamma", "--n", "12", "--s", "2"]).status.code(), Some(3));
    assert_eq!(maghom(&["verify", "--only", "no-such-check"]).status.code(), Some(2));
}

#[test]
fn edge_list_input() {
    let dir = std::env::temp_dir().join(format!("maghom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("path.txt");
    std::fs::write(&path, "# directed\n0 1\n1 2\n").unwrap();
    let v = json(&["compute", "rmagnitude", "--input", path.to_str().unwrap()]);
    assert_eq!(v["label"], "certified");
    assert_eq!(v["polynomial"], "3 - 2q");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn verify_single_check() {
    let out = maghom(&["verify", "--only", "charregdiag", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"][0]["id"], "charregdiag");
    assert_eq!(v["checks"][0]["passed"], true);
}
