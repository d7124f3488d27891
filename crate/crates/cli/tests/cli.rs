use std::io::Write;
use std::process::{Command, Output, Stdio};

fn autseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autseq"))
        .args(args)
        .env_remove("AUTSEQ_HORIZONS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn seq_writes_bfile() {
    let o = autseq(&["seq", "z", "5", "--offset", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 0\n2 2\n3 3\n4 4\n5 6\n");
}

#[test]
fn seq_json_lines() {
    let o = autseq(&["--format", "json", "seq", "tp3", "4"]);
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[3]["value"], 1);
}

#[test]
fn unknown_names_are_usage_errors() {
    assert_eq!(autseq(&["seq", "nope", "3"]).status.code(), Some(2));
    assert_eq!(autseq(&["check", "nope"]).status.code(), Some(2));
    assert_eq!(autseq(&["seq"]).status.code(), Some(2));
    assert_eq!(autseq(&["complexity", "l9", "3"]).status.code(), Some(2));
}

#[test]
fn single_check_passes() {
    let o = autseq(&["check", "period-doubling-morphisms"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with("PASS period-doubling-morphisms"));
}

#[test]
fn failing_check_exits_with_one() {
    let o = autseq(&["check", "eigenvalues"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL eigenvalues"));
}

#[test]
fn check_json_is_deterministic_apart_from_timing() {
    let run = || -> Vec<serde_json::Value> {
        let o = autseq(&[
            "--format",
            "json",
            "check",
            "complexity",
            "reversion",
            "--horizon",
            "reversion=512",
        ]);
        stdout(&o)
            .lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("elapsed_ms");
                v
            })
            .collect()
    };
    let first = run();
    assert_eq!(first.len(), 2);
    assert_eq!(first[0]["id"], "complexity");
    assert_eq!(first[1]["horizon"], 512);
    assert_eq!(first, run());
}

#[test]
fn horizon_environment_fallback() {
    let o = Command::new(env!("CARGO_BIN_EXE_autseq"))
        .args(["check", "numeration"])
        .env("AUTSEQ_HORIZONS", "numeration=0")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("SKIP numeration"));
}

#[test]
fn kernel_report_json() {
    let o = autseq(&[
        "--format",
        "json",
        "kernel",
        "u",
        "--depth",
        "6",
        "--horizon",
        "64",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["status"]["status"], "closed");
    let depths = v["depths"].as_array().unwrap();
    assert_eq!(depths.last().unwrap()["classes"], 5);
    let rep = &depths[0]["representatives"][0];
    assert_eq!(rep["fingerprint"].as_array().unwrap().len(), 32);
}

#[test]
fn open_kernel_is_reported_as_open() {
    let o = autseq(&["kernel", "a", "--depth", "4", "--horizon", "64"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("a: 2-kernel open at depth 5"));
}

#[test]
fn dfao_outputs() {
    let dot = stdout(&autseq(&["dfao", "u", "--dot"]));
    assert!(dot.starts_with("digraph"));
    let json = stdout(&autseq(&["--format", "json", "dfao", "lf"]));
    let v: serde_json::Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["read_order"], "msd_first");
    let synthesized = stdout(&autseq(&["dfao", "u", "--from-kernel"]));
    assert_eq!(synthesized.lines().count(), 6);
}

#[test]
fn complexity_of_lprime_is_fibonacci() {
    let o = autseq(&["complexity", "lprime", "6"]);
    let counts: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split(' ').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(counts, ["1", "1", "2", "3", "5", "8", "13"]);
}

#[test]
fn invert_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_autseq"))
        .args(["invert", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"p":2,"coeffs":[0,1,0,0,0,1,0,1]}"#)
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0 1 0 0 0 1 0 1");
}

#[test]
fn invert_rejects_nonzero_constant_term() {
    let o = autseq(&["invert", r#"{"p":3,"coeffs":[1,1]}"#]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ore_recovers_quartic() {
    let o = autseq(&[
        "--format", "json", "ore", "u", "--p", "2", "--depth", "2", "--deg", "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["relation"]["terms"].as_array().unwrap().len(), 4);
}
