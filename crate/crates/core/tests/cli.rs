use std::process::{Command, Output};

fn gem2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gem2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_reports_admissibility() {
    let o = gem2(&["check", "(1,1,3;2,0,2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("admissible"));
}

#[test]
fn malformed_tuple_exits_2() {
    assert_eq!(gem2(&["check", "(1,1,2;0,0,0)"]).status.code(), Some(2));
    assert_eq!(gem2(&["sigma", "(1,1)"]).status.code(), Some(2));
    assert_eq!(gem2(&["psi", "4", "(1,1,1;0,0,0)"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(gem2(&["verify", "nope"]).status.code(), Some(1));
    assert_eq!(gem2(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn sigma_and_canonical() {
    let o = gem2(&["sigma", "(3,1,3;2,2,2)"]);
    assert_eq!(stdout(&o).trim(), "(2,2,2;3,1,1)");
    let o = gem2(&["canonical", "(3,3,3;2,2,0)"]);
    assert_eq!(stdout(&o).trim(), "(3,3,3;0,2,2)");
}

#[test]
fn minimize_ends_at_the_root() {
    let o = gem2(&["minimize", "(1,3,3;2,2,2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("minimal\t(2,2,2;1,1,3)"));
}

#[test]
fn catalogue_writes_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.tsv");
    let o = gem2(&[
        "catalogue",
        "--max-complexity",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let tuples: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    assert_eq!(tuples, ["(1,1,1;0,0,0)", "(1,1,3;0,0,2)", "(1,1,3;2,0,2)"]);
}

#[test]
fn verify_suite_passes() {
    let o = gem2(&["--jobs", "2", "verify", "catalogue-smoke"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
}

#[test]
fn graph_formats() {
    let dot = stdout(&gem2(&["graph", "(1,1,1;0,0,0)"]));
    assert!(dot.starts_with("graph G {"));
    let tsv = stdout(&gem2(&["graph", "(1,1,1;0,0,0)", "--format", "tsv"]));
    assert_eq!(tsv.lines().count(), 1 + 6);
}
