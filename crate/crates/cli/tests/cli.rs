//! End-to-end runs of the `plm` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn plm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plm")).args(args).env_remove("PLM_CAP").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = plm(&all);
    assert!(o.status.success(), "{:?}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn classify_lists_m2_variety() {
    let v = json(&["classify", "xzxyty = xzyxty"]);
    assert_eq!(v["balanced"], true);
    let names: Vec<&str> = v["varieties"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(names.contains(&"M2v"));
    assert!(!names.contains(&"hypo"));
    let v = json(&["classify", "M3", "--variety", "hypo"]);
    assert_eq!(v["satisfied"], true);
}

#[test]
fn unbalanced_identities_are_rejected_under_strict() {
    let o = plm(&["classify", "xy = x", "--strict"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(plm(&["classify", "xy = x"]).status.success());
}

#[test]
fn equiv_on_letter_words() {
    let o = plm(&["equiv", "sylv", "2 1 1", "1 2 1"]);
    assert_eq!(stdout(&o), "equivalent\n");
    let o = plm(&["equiv", "sylv#", "2 1 1", "1 2 1", "--strict"]);
    assert_eq!(stdout(&o), "not equivalent\n");
    assert_eq!(o.status.code(), Some(1));
    let v = json(&["equiv", "hs", "1 2 1", "2 1 1"]);
    assert_eq!(v["kind"], "hs");
}

#[test]
fn cap_comes_from_flag_or_environment() {
    let (a, b) = ("1 2 3 1 2 3 1 2 3 1 2 3", "3 3 3 3 2 2 2 2 1 1 1 1");
    let o = plm(&["equiv", "hs", a, b, "--cap", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_plm")).args(["equiv", "ms", a, b]).env("PLM_CAP", "5").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn consequence_prints_a_trace() {
    let o = plm(&["consequence", "--basis", "L1,R2", "xxyy = yyxx"]);
    let text = stdout(&o);
    assert!(o.status.success());
    assert!(text.starts_with("xxyy\n"));
    assert!(text.trim_end().ends_with("step(s)"));
    let v = json(&["consequence", "--basis", "R2", "L2"]);
    assert_eq!(v["derivable"], false);
    let o = plm(&["consequence", "--basis", "R2", "L2"]);
    assert!(stdout(&o).contains("not derivable (complete within content class)"));
}

#[test]
fn consequence_reads_basis_files() {
    let dir = std::env::temp_dir().join(format!("plm-basis-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("basis.txt");
    std::fs::write(&file, "# left stalactic and a commutation\nL1\nxxyy = yyxx\n").unwrap();
    let v = json(&["consequence", "--basis", file.to_str().unwrap(), "R2"]);
    assert_eq!(v["derivable"], true);
    assert_eq!(v["basis"][1], "xxyy = yyxx");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn isoterms() {
    assert_eq!(json(&["isoterm", "hypo", "xzxyty"])["isoterm"], true);
    assert_eq!(json(&["isoterm", "jst", "xxy"])["isoterm"], false);
}

#[test]
fn monoids() {
    let v = json(&["monoid", "J1", "--table"]);
    assert_eq!(v["elements"], serde_json::json!(["1", "a", "b", "0"]));
    assert_eq!(v["table"][1][1], 3);
    let v = json(&["monoid", "FlipL", "--check", "xy = yx"]);
    assert_eq!(v["satisfied"], false);
    assert_eq!(v["evaluation"]["x"], "e");
    assert_eq!(v["evaluation"]["y"], "f");
    assert_eq!(plm(&["monoid", "plactic"]).status.code(), Some(2));
}

#[test]
fn lattices() {
    let dot = stdout(&plm(&["lattice", "L1", "--dot"]));
    assert_eq!(dot, stdout(&plm(&["lattice", "L1", "--dot"])));
    assert!(dot.contains("rankdir=BT"));
    let v = json(&["lattice", "L3", "--verify"]);
    assert_eq!(v["nodes"], 26);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    let v = json(&["lattice", "L2"]);
    assert_eq!(v["top"], "baxt");
    assert_eq!(v["bottom"], "jst");
    assert_eq!(plm(&["lattice", "L4"]).status.code(), Some(2));
}

#[test]
fn verify_suite() {
    let o = plm(&["verify", "--suite", "quick"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 12);
    let v = json(&["verify", "--suite", "paper", "--criterion", "9"]);
    assert_eq!(v["passed"], true);
    assert_eq!(plm(&["verify", "--suite", "slow"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(plm(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(plm(&["classify", "xy = x?"]).status.code(), Some(2));
    assert_eq!(plm(&["classify"]).status.code(), Some(2));
}
