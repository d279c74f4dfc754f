use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subregular"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn hodges_report() {
    let v = json(&["hodges", "report", "--p", "5", "--n", "3", "--r", "1,2"]);
    assert_eq!(v["schema"], "subregular.hodges.report/1");
    assert_eq!(v["dim_t"], 41);
    assert_eq!(v["dim_frak_t"], 75);
}

#[test]
fn ktheory_verify() {
    let v = json(&["ktheory", "verify", "--n", "4"]);
    assert_eq!(v["all_hold"], true);
    assert_eq!(v["theta_discrepancy"], -1);
}

#[test]
fn ktheory_pair_and_apply() {
    let v = json(&["ktheory", "pair", "--x", "0,1,0", "--y", "0,1,0"]);
    assert_eq!(v["pairing"], "1 + v^-2");
    let v = json(&["ktheory", "apply", "--word", "T1", "--x", "1,0,0"]);
    assert_eq!(v["result"][0], "v");
    let out = run(&[
        "ktheory",
        "apply",
        "--word",
        "T3",
        "--x",
        "1,0,0",
        "--convention",
        "lusztig",
    ]);
    assert!(!out.status.success());
}

#[test]
fn nocycle_strings() {
    let v = json(&["nocycle", "strings", "--k", "2", "--t", "1"]);
    assert_eq!(v["count"], 4);
    assert!(!run(&["nocycle", "strings", "--k", "2", "--t", "3"])
        .status
        .success());
}

#[test]
fn modlie_verma() {
    let v = json(&[
        "modlie", "verma", "--n", "3", "--p", "5", "--r", "1,2", "--k", "1", "--alpha", "2",
        "--report", "json",
    ]);
    assert_eq!(v["dim"], 125);
    assert_eq!(v["end_dim"], 1);
}

#[test]
fn gs_complete_from_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_subregular"))
        .args([
            "gs",
            "complete",
            "--alphabet",
            "x:1",
            "--rules",
            "-",
            "--p",
            "3",
        ])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x\n").unwrap();
    let out = child.wait_with_output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["basis_size"], 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["hodges", "report", "--p", "3", "--n", "2", "--r", "1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["ktheory", "verify", "--n", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn usage_errors() {
    let out = run(&["frobnicate"]);
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
    let out = run(&["hodges", "report", "--p", "4", "--n", "2", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
}

#[test]
fn acceptance_single_criterion() {
    let out = run(&["acceptance", "--only", "7"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("criterion 7: PASS"));
}
