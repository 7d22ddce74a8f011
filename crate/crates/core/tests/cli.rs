use std::process::{Command, Output};

use twisted_schubert::polyring::parse;

fn tschub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tschub")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn documented_outputs() {
    let o = tschub(&["schubert", "--n", "4", "--perm", "2431"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "x1^2*x2*x3 + x1*x2^2*x3");

    let o = tschub(&["twisted", "--n", "3", "--perm", "123", "--method", "both", "--format", "text"]);
    assert!(o.status.success());
    let expected = parse("x2*x3^2 + 2*x2*x3 + x3^2 + 2*x3 + x1*x2 + x2 + 1", 3).unwrap();
    assert_eq!(parse(stdout(&o).trim(), 3).unwrap(), expected);

    let o = tschub(&["localize", "--n", "3", "--perm", "123", "--at", "213"]);
    assert_eq!(stdout(&o).trim(), "(1+y3-y1)*(1+y3-y2)");
}

#[test]
fn json_outputs() {
    let o = tschub(&["localize", "--n", "3", "--perm", "123", "--at", "213", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["factored"], "(1+y3-y1)*(1+y3-y2)");
    assert!(v["polynomial"]["terms"].is_array());

    let o = tschub(&["pipedreams", "--perm", "2431", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[0]["n"], 4);

    let o = tschub(&["pieri", "--n", "3", "--perm", "123", "--m", "2", "--k", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"], serde_json::json!([[2, 3, 1]]));
}

#[test]
fn every_method_agrees() {
    for cmd in ["schubert", "twisted", "double", "double-twisted"] {
        for method in ["recursion", "combinatorial", "both"] {
            let o = tschub(&[cmd, "--perm", "1432", "--method", method]);
            assert!(o.status.success(), "{cmd} {method}");
        }
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tschub(&["schubert", "--perm", "1123"]).status.code(), Some(2));
    assert_eq!(tschub(&["schubert", "--n", "5", "--perm", "1234"]).status.code(), Some(2));
    assert_eq!(tschub(&["localize", "--perm", "123", "--at", "1234"]).status.code(), Some(2));
    assert_eq!(tschub(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tschub(&["verify", "--n", "3", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn pieri_too_small_exits_1() {
    let o = tschub(&["pieri", "--n", "5", "--perm", "13245", "--m", "3", "--k", "2", "--kind", "h"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("retry with a larger N"));
    let o = tschub(&["pieri", "--n", "6", "--perm", "13245", "--m", "3", "--k", "2", "--kind", "h"]);
    assert!(o.status.success());
}

#[test]
fn verify_passes_and_is_stable() {
    for n in ["3", "4"] {
        let a = tschub(&["verify", "--n", n, "--seed", "7"]);
        assert!(a.status.success(), "{}", stdout(&a));
        let b = tschub(&["verify", "--n", n, "--seed", "7"]);
        assert_eq!(a.stdout, b.stdout);
        let json = tschub(&["verify", "--n", n, "--seed", "7", "--format", "json"]);
        let single = Command::new(env!("CARGO_BIN_EXE_tschub"))
            .args(["verify", "--n", n, "--seed", "7", "--format", "json"])
            .env("TSCHUB_THREADS", "1")
            .output()
            .unwrap();
        assert_eq!(json.stdout, single.stdout);
    }
}

#[test]
fn experiment_runs() {
    let o = tschub(&["experiment-tv-positivity", "--n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checked"], 36);
}
