use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dynachrome(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynachrome"))
        .args(args)
        .env_remove("DYNACHROME_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dynachrome-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn solve_c5_dynamic() {
    let out = dynachrome(&["solve", "--family", "cycle:5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["value"], 5);
    assert_eq!(v["coloring"]["graph_id"], "cycle:5");
    assert_eq!(v["coloring"]["certificates"][0]["holds"], true);
}

#[test]
fn gen_then_solve_from_file() {
    let out = dynachrome(&["gen", "--family", "kneser:5,2", "--format", "text"]);
    assert!(out.status.success());
    let path = scratch("petersen.col", &String::from_utf8(out.stdout).unwrap());
    let out = dynachrome(&["solve", "--graph", path.to_str().unwrap(), "--problem", "chromatic"]);
    assert_eq!(json(&out)["result"]["value"], 3);
}

#[test]
fn budget_exhaustion_exits_2() {
    let out = dynachrome(&["solve", "--family", "kneser:7,3", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["exhausted"], true);
    let env = Command::new(env!("CARGO_BIN_EXE_dynachrome"))
        .args(["solve", "--family", "kneser:7,3"])
        .env("DYNACHROME_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
}

#[test]
fn invalid_input_exits_1() {
    let out = dynachrome(&["solve", "--family", "cycle:2"]);
    assert_eq!(out.status.code(), Some(1));
    let bad = scratch("loop.col", "p edge 2 1\ne 1 1\n");
    let out = dynachrome(&["solve", "--graph", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn verify_round_trip_and_failure() {
    let out = dynachrome(&["construct", "kneser", "--m", "8", "--n", "3"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert!(doc["palette_size"].as_u64().unwrap() <= 6);
    let path = scratch("kg83.json", &doc.to_string());
    let out = dynachrome(&["verify", "--family", "kneser:8,3", "--coloring", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["valid"], true);

    let bad = scratch("c5bad.json", r#"{"graph_id":"cycle:5","palette_size":3,"assignment":[0,1,2,0,1]}"#);
    let out = dynachrome(&["verify", "--family", "cycle:5", "--coloring", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["certificates"][0]["violations"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_subset() {
    let t = scratch("t.json", r#"{"host_size":8,"members":[0,1,4,5]}"#);
    let out = dynachrome(&["verify", "--family", "cycle:8", "--subset", t.to_str().unwrap()]);
    assert!(out.status.success());
    let t = scratch("t6.json", r#"{"host_size":6,"members":[0,1,3,4]}"#);
    let out = dynachrome(&["verify", "--family", "cycle:6", "--subset", t.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bounds_for_kneser_family() {
    let out = dynachrome(&["bounds", "--family", "kneser:7,3"]);
    let v = json(&out);
    let kneser = v["bounds"]["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == "kneser")
        .unwrap()
        .clone();
    assert_eq!(kneser["applicable"], true);
    assert_eq!(kneser["value"], 5);
}

#[test]
fn constructions_run() {
    let out = dynachrome(&["construct", "double-total", "--family", "regular:20,9", "--seed", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = dynachrome(&["construct", "balanced", "--family", "complete-bipartite:16,16"]);
    assert!(out.status.success());
    let out = dynachrome(&["construct", "product", "--family", "regular:30,9"]);
    assert!(out.status.success());
    let out = dynachrome(&["construct", "sublists", "--family", "cycle:4", "--m", "4", "--l", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dynachrome(&["construct", "double-total", "--family", "cycle:6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn experiments_write_csv() {
    let csv = std::env::temp_dir().join(format!("dynachrome-gnp-{}.csv", std::process::id()));
    let out = dynachrome(&[
        "experiment", "gnp", "--n", "40", "--p", "0.5", "--trials", "5", "--seed", "9", "--csv", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["version"], 1);
    assert_eq!(v["trials"].as_array().unwrap().len(), 5);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("index,seed,"));

    let out = dynachrome(&["experiment", "scan", "--family", "fixtures", "--format", "text"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 candidates"));
}

#[test]
fn reports_are_reproducible() {
    let a = dynachrome(&["experiment", "scan", "--family", "cubic:10,12", "--seed", "4"]);
    let b = dynachrome(&["experiment", "scan", "--family", "cubic:10,12", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
}
