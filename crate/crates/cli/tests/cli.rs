use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordercalc")).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ordercalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

#[test]
fn sign_examples() {
    let o = run(&["sign", "--group", "bs:3", "--ordering", "smirnov:sqrt2", "--element", "(0,1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["payload"]["sign"], "Positive");
    let o = run(&["sign", "--group", "tararin:2", "--ordering", "++ ", "--element", "(0,0)"]);
    assert_eq!(json(&o)["payload"]["sign"], "Zero");
    let o = run(&["sign", "--group", "f2", "--ordering", "conj(magnus,a)", "--element", "b"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cmp_and_agree() {
    let o = run(&["cmp", "--group", "z2", "--ordering", "z2:psi:sqrt2", "--lhs", "(0,0)", "--rhs", "(1,0)"]);
    assert_eq!(json(&o)["payload"]["relation"], "<");
    let o = run(&["agree", "--group", "z2", "--first", "z2:psi:sqrt2", "--second", "reverse(z2:psi:sqrt2)"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["payload"]["agree"], false);
    // The witness feeds back into sign.
    let w = v["payload"]["element"].as_str().unwrap().to_string();
    let a = run(&["sign", "--group", "z2", "--ordering", "z2:psi:sqrt2", "--element", &w]);
    let b = run(&["sign", "--group", "z2", "--ordering", "reverse(z2:psi:sqrt2)", "--element", &w]);
    assert_ne!(json(&a)["payload"]["sign"], json(&b)["payload"]["sign"]);
}

#[test]
fn tararin_enumeration() {
    let o = run(&["enumerate", "--group", "tararin:3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["payload"]["count"], 8);
    assert_eq!(v["payload"]["witnesses"].as_array().unwrap().len(), 28);
}

#[test]
fn output_is_byte_identical() {
    let args = ["enumerate", "--group", "cn:1", "--radius", "2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn usage_errors_exit_2() {
    let o = run(&["sign", "--group", "nope", "--ordering", "x", "--element", "y"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["status"], "fail");
    let o = run(&["sign", "--group", "bs:3", "--ordering", "smirnov:sqrt2", "--element", "junk"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = run(&["enumerate", "--group", "z2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn conradian_failure_round_trips_through_verify() {
    let o = run(&["conradian", "--group", "bs:3", "--ordering", "smirnov:sqrt2", "--radius", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let path = tmp("witness.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let p = path.to_str().unwrap();
    let v = run(&["crossing", "verify", "--group", "bs:3", "--ordering", "smirnov:sqrt2", "--witness", p]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json(&v)["payload"]["exactness"], "ExactForAll");
    // The same quintuple is not a crossing for a Conradian ordering.
    let v = run(&["crossing", "verify", "--group", "bs:3", "--ordering", "bsconrad:1", "--witness", p]);
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn crossing_find_and_soul() {
    let o = run(&["crossing", "find", "--group", "bs:3", "--ordering", "bsconrad:2", "--radius", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["soul", "--group", "tararin:2", "--ordering", "++", "--element", "(0,0)"]);
    assert_eq!(json(&o)["payload"]["in_soul"], true);
}

#[test]
fn dynreal_commands() {
    let base = ["--group", "tararin:2", "--ordering", "+-", "--radius", "2", "--word-radius", "1", "--bound", "3"];
    let o = run(&[&["dynreal", "check"][..], &base].concat());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(json(&o)["payload"]["coherent"], true);
    let svg = tmp("dyn.svg");
    let o = run(&[&["dynreal", "plot"][..], &base, &["--out", svg.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn fdense_single_seed_and_plot() {
    let seeds = tmp("seeds1.json");
    std::fs::write(&seeds, r#"[{"radius": 1, "ordering": "abel:z2:psi:sqrt2"}]"#).unwrap();
    let action = tmp("glued1.json");
    let (s, a) = (seeds.to_str().unwrap(), action.to_str().unwrap());
    assert_eq!(run(&["fdense", "build", "--seeds", s, "--out", a]).status.code(), Some(0));
    let v = run(&["fdense", "verify", "--action", a, "--seeds", s]);
    assert_eq!(v.status.code(), Some(0));
    let svg = tmp("glued1.svg");
    assert_eq!(run(&["fdense", "plot", "--action", a, "--out", svg.to_str().unwrap()]).status.code(), Some(0));
    // A malformed action file is a usage error.
    std::fs::write(&action, "{}").unwrap();
    assert_eq!(run(&["fdense", "verify", "--action", a, "--seeds", s]).status.code(), Some(2));
}

#[test]
fn thompson_sign_and_fit() {
    let o = run(&["thompson", "sign", "--ordering", "thompson:xminus+", "--element", "x0"]);
    assert_eq!(json(&o)["payload"]["sign"], "Negative");
    let o = run(&["thompson", "sign", "--ordering", "thompson:lambda:z2:psi:sqrt2:xplus-", "--element", "X0"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["fit-epsilon", "--group", "bs:3", "--ordering", "bsconrad:3"]);
    assert_eq!(json(&o)["payload"]["ordering"], "bsconrad:3");
    let o = run(&["threshold", "--group", "bs:3", "--positive", "(1,-1)"]);
    assert_eq!(json(&o)["payload"]["threshold"], "3/2");
}
