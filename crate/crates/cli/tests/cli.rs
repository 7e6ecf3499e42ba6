use std::path::PathBuf;
use std::process::{Command, Output};

use ckr_gap::cuts::NamedCut;
use ckr_gap::format::write_labeling;
use ckr_gap::rational::rat;
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckr-gap")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ckr-gap-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn result<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["results"].as_array().unwrap().iter().find(|e| e["name"] == name).unwrap_or_else(|| panic!("no {name}"))
}

#[test]
fn gen_i2_json_has_nine_third_edges() {
    let o = bin(&["gen", "I2", "--n", "3"]);
    assert!(o.status.success());
    let v = json(&o);
    let edges = v["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 9);
    assert!(edges.iter().all(|e| e["w"] == "1/3"));
    assert_eq!(v["k"], 4);
}

#[test]
fn gen_j_dimacs_header() {
    let o = bin(&["gen", "J", "--n", "9", "--format", "dimacs"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "p mwc 55 117 3"));
    let all = stdout(&bin(&["gen", "J", "--n", "9", "--format", "dimacs", "--include-zero-edges"]));
    assert!(all.lines().any(|l| l == "p mwc 55 135 3"));
}

#[test]
fn lambda_violation_exits_two() {
    let o = bin(&["gen", "combined", "--n", "3", "--c", "1/3", "--lambda", "0.5,0.5,0.5,0"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "lambda-simplex-violation");
}

#[test]
fn gen_writes_to_out_path() {
    let path = scratch("j6.json");
    let o = bin(&["gen", "J", "--n", "6", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, stdout(&bin(&["gen", "J", "--n", "6"])));
}

#[test]
fn eval_named_cuts() {
    let p3 = json(&bin(&["eval-cut", "--what", "I3", "--n", "6", "--c", "1/6", "--cut", "P3"]));
    assert_eq!(result(&p3, "cost")["value"]["exact"], "0/1");
    let pp = json(&bin(&["eval-cut", "--what", "I2", "--n", "6", "--c", "1/6", "--cut", "P_prime"]));
    assert_eq!(result(&pp, "cost")["value"]["exact"], "2/1");
    assert_eq!(result(&pp, "non-opposite")["value"], true);
    let q0 = json(&bin(&["eval-cut", "--what", "J", "--n", "6", "--cut", "Q0"]));
    assert_eq!(result(&q0, "cut-set size")["value"], 13);
    assert_eq!(result(&q0, "cost")["value"]["exact"], "13/10");
}

#[test]
fn eval_cut_from_files() {
    let inst = scratch("i2.dimacs");
    assert!(bin(&["gen", "I2", "--n", "3", "--format", "dimacs", "--out", inst.to_str().unwrap()]).status.success());
    let cut = NamedCut::PPrime.build(3, Some(&rat(1, 3))).unwrap();
    let cut_path = scratch("pprime.json");
    std::fs::write(&cut_path, write_labeling(&cut)).unwrap();
    let o = bin(&["eval-cut", "--instance", inst.to_str().unwrap(), "--cut-file", cut_path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(result(&json(&o), "cost")["value"]["exact"], "2/1");

    // A cut on a different lattice is rejected.
    let small = NamedCut::PPrime.build(6, Some(&rat(1, 6))).unwrap();
    std::fs::write(&cut_path, write_labeling(&small)).unwrap();
    let o = bin(&["eval-cut", "--instance", inst.to_str().unwrap(), "--cut-file", cut_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_verifies_bound_out_of_regime() {
    let o = bin(&[
        "enumerate", "--what", "combined", "--n", "3", "--c", "1/3", "--lambda", "0.3,0.3,0.2,0.2", "--verify-bound",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(result(&v, "proven optimal")["value"], true);
    assert_eq!(result(&v, "minimum respects bound")["passed"], true);
    assert_eq!(v["regime"]["bound"], "out-of-regime");
}

#[test]
fn enumerate_small_budget_is_not_proven() {
    let o = bin(&["enumerate", "--what", "I1", "--n", "3", "--budget", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(result(&json(&o), "proven optimal")["passed"], false);
}

#[test]
fn reproduce_enumeration_without_budget() {
    let o = bin(&["reproduce", "enumeration", "--budget", "0", "--no-timing"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["passed"], false);
    let text = stdout(&o);
    assert!(text.contains("budget-exhausted"));
    assert!(text.contains("[7] minimum non-opposite cut costs"));
}

#[test]
fn reproduce_formats_passes() {
    let o = bin(&["reproduce", "formats", "--no-timing", "--format", "text"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("overall: PASS"));
}

#[test]
fn sperner_and_limits_reports() {
    let s = json(&bin(&["sperner-verify", "--k", "3", "--n", "3"]));
    assert_eq!(result(&s, "max monochromatic")["value"], 3);
    let l = bin(&["limits", "--no-timing"]);
    assert!(l.status.success());
    let v = json(&l);
    assert_eq!(result(&v, "beta* (c in [0, 1/9))")["value"], "1.200664283");
}

#[test]
fn outputs_are_byte_identical_across_runs_and_threads() {
    let runs = [
        vec!["gen", "J", "--n", "9", "--format", "dimacs"],
        vec!["limits", "--no-timing"],
        vec!["optimize", "--no-timing", "--c-steps", "199", "--refine-rounds", "4"],
    ];
    for args in &runs {
        assert_eq!(bin(args).stdout, bin(args).stdout, "{args:?}");
    }
    let base = ["enumerate", "--what", "combined", "--n", "3", "--c", "1/3", "--lambda", "1/4,1/4,1/4,1/4", "--no-timing"];
    let one = bin(&[&base[..], &["--threads", "1"]].concat()).stdout;
    for t in ["2", "3"] {
        assert_eq!(bin(&[&base[..], &["--threads", t]].concat()).stdout, one, "threads {t}");
    }
}
