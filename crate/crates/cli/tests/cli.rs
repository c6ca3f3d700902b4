//! End-to-end tests against the built binary: the documented command
//! surface, the JSON contracts, and determinism of suite output.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn seqlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqlab"))
        .args(args)
        .env_remove("SEQLAB_SEED")
        .output()
        .expect("binary runs")
}

fn seqlab_json(args: &[&str]) -> Value {
    let out = seqlab(args);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON output")
}

fn write_seq(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("seqlab-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn norm_of_witness_vector_is_one() {
    let path = write_seq(
        "x3.json",
        r#"{"kind":"finite","coords":{"1":"1","2":"2","3":"3","4":"4"}}"#,
    );
    let v = seqlab_json(&["norm", "--space", "X", "--seq", path.to_str().unwrap()]);
    assert_eq!(v["norm"]["exact"], "1");
}

#[test]
fn norm_of_power_family_closed_form() {
    let path = write_seq("pow.json", r#"{"kind":"power","p":"1/2"}"#);
    let v = seqlab_json(&[
        "norm",
        "--space",
        "X",
        "--seq",
        path.to_str().unwrap(),
        "--decimals",
        "4",
    ]);
    assert_eq!(v["norm"]["exact"], "1");
    assert_eq!(v["norm"]["exact_decimal"], "1.0000");
}

#[test]
fn norm_rejects_non_members() {
    let path = write_seq("k.json", r#"{"kind":"power","p":"1"}"#);
    let out = seqlab(&["norm", "--space", "X", "--seq", path.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a member"));
}

#[test]
fn membership_verdicts() {
    let path = write_seq(
        "i.json",
        r#"{"kind":"exponential","lambda":{"re":"0","im":"1"}}"#,
    );
    let v = seqlab_json(&["member", "--seq", path.to_str().unwrap(), "--space", "X"]);
    assert_eq!(v["verdict"], "not-member");

    let path = write_seq("half.json", r#"{"kind":"exponential","lambda":"1/2"}"#);
    let v = seqlab_json(&["member", "--seq", path.to_str().unwrap(), "--space", "X"]);
    assert_eq!(v["verdict"], "member");
}

#[test]
fn divergence_index_for_alternating_signs() {
    let v = seqlab_json(&["diverge", "--lambda", "-1", "--threshold", "10"]);
    assert_eq!(v["index"], 137);
    // members are rejected
    let out = seqlab(&["diverge", "--lambda", "1/2", "--threshold", "1"]);
    assert!(!out.status.success());
}

#[test]
fn iso_apply_and_verify() {
    let path = write_seq("e1.json", r#"{"kind":"finite","coords":{"1":"1"}}"#);
    let v = seqlab_json(&["iso", "--map", "J", "--seq", path.to_str().unwrap()]);
    assert_eq!(v["result"]["coords"]["1"], "-1");

    let path = write_seq(
        "mix.json",
        r#"{"kind":"finite","coords":{"1":"3/2","4":"-1/3"}}"#,
    );
    let v = seqlab_json(&[
        "iso",
        "--verify-isometry",
        "--map",
        "J",
        "--seq",
        path.to_str().unwrap(),
    ]);
    assert_eq!(v["certificate"]["passed"], true);
    assert_eq!(v["certificate"]["residual"]["exact"], "0");
}

#[test]
fn shift_apply_witness_and_right_inverse() {
    let path = write_seq("e5.json", r#"{"kind":"finite","coords":{"5":"1"}}"#);
    let v = seqlab_json(&[
        "shift",
        "--kind",
        "bounded",
        "--w",
        "3",
        "--n",
        "2",
        "--seq",
        path.to_str().unwrap(),
    ]);
    assert_eq!(v["result"]["coords"]["3"], "9");

    let v = seqlab_json(&["shift", "--witness-norm", "--w", "1", "--n", "50"]);
    assert_eq!(v["certificate"]["passed"], true);

    let path = write_seq("e1b.json", r#"{"kind":"finite","coords":{"1":"1"}}"#);
    let v = seqlab_json(&[
        "shift",
        "--kind",
        "unbounded",
        "--w",
        "2",
        "--n",
        "2",
        "--right-inverse",
        "--seq",
        path.to_str().unwrap(),
    ]);
    assert_eq!(v["result"]["coords"]["3"], "1/8");
}

#[test]
fn conjugate_closed_form_and_verification() {
    let path = write_seq("z.json", r#"{"kind":"finite","coords":{"1":"1","2":"2"}}"#);
    for which in ["x-bounded", "x-unbounded", "l1-bounded", "l1-unbounded"] {
        let v = seqlab_json(&[
            "conjugate",
            "--which",
            which,
            "--w",
            "2",
            "--n",
            "1",
            "--seq",
            path.to_str().unwrap(),
            "--verify",
        ]);
        assert_eq!(v["certificate"]["passed"], true, "{which}");
    }
}

#[test]
fn orbit_reports_certified_bounds() {
    let t1 = write_seq("t1.json", r#"{"kind":"finite","coords":{"1":"1"}}"#);
    let t2 = write_seq("t2.json", r#"{"kind":"finite","coords":{"2":"2"}}"#);
    let v = seqlab_json(&[
        "orbit",
        "--targets",
        t1.to_str().unwrap(),
        t2.to_str().unwrap(),
        "--w",
        "2",
        "--epsilon",
        "1/1024",
    ]);
    let gaps = v["gaps"].as_array().unwrap();
    assert_eq!(gaps[0], 0);
    assert!(gaps[1].as_u64().unwrap() > 0);
}

#[test]
fn periodic_point_residual_contract() {
    let base = write_seq(
        "base.json",
        r#"{"kind":"finite","coords":{"1":"1","2":"2"}}"#,
    );
    let v = seqlab_json(&[
        "periodic",
        "--base",
        base.to_str().unwrap(),
        "--N",
        "2",
        "--w",
        "2",
        "--blocks",
        "12",
    ]);
    // residual 2^-24 * 2/13 and certificate 3 * 2^-24
    assert_eq!(v["residual"]["exact"], "1/109051904");
    assert_eq!(v["tail_norm_bound"], "3/16777216");
}

#[test]
fn obstruction_index_matches_brute_force() {
    let v = seqlab_json(&[
        "obstruct", "--xj", "1", "--xj1", "2", "--j", "1", "--N", "1", "--threshold", "1",
    ]);
    assert_eq!(v["index"], 8);
}

#[test]
fn eigenvalue_witnesses() {
    let v = seqlab_json(&[
        "eig", "--kind", "unbounded", "--lambda", "3", "--w", "2", "--check", "50",
    ]);
    assert_eq!(v["verdict"], "eigenvalue");
    assert_eq!(v["recurrence"]["passed"], true);

    let v = seqlab_json(&["eig", "--kind", "bounded", "--lambda", "-1", "--w", "1"]);
    assert_eq!(v["verdict"], "boundary-excluded");
    assert!(v["divergence_index"].as_u64().unwrap() >= 1);
}

#[test]
fn radius_csv_has_labeled_columns() {
    let out = seqlab(&["radius", "--n-max", "64", "--emit", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "identity,n,lower,upper,lower_decimal,upper_decimal"
    );
    assert!(lines.next().unwrap().starts_with("(n+1)^(1/n),1,2,2"));
}

#[test]
fn suite_exit_codes_and_determinism() {
    let a = seqlab(&["suite", "--name", "isometry", "--seed", "1", "--trials", "5"]);
    assert!(a.status.success());
    let b = seqlab(&["suite", "--name", "isometry", "--seed", "1", "--trials", "5"]);
    assert_eq!(a.stdout, b.stdout, "same seed and flags, same bytes");

    let c = seqlab(&["suite", "--name", "isometry", "--seed", "2", "--trials", "5"]);
    assert!(c.status.success());

    // vacuous run: zero trials still exits 0
    let v = seqlab_json(&["suite", "--name", "norms", "--trials", "0"]);
    assert_eq!(v["trials"], 0);
    assert_eq!(v["failed"], 0);
}

#[test]
fn seqlab_seed_env_overrides_flag() {
    let flag = seqlab(&["suite", "--name", "norms", "--seed", "3", "--trials", "4"]);
    let env = Command::new(env!("CARGO_BIN_EXE_seqlab"))
        .args(["suite", "--name", "norms", "--seed", "999", "--trials", "4"])
        .env("SEQLAB_SEED", "3")
        .output()
        .expect("binary runs");
    assert!(env.status.success());
    assert_eq!(flag.stdout, env.stdout);
}

#[test]
fn suite_all_reports_identity_table() {
    let v = seqlab_json(&["suite", "--name", "all", "--seed", "7", "--trials", "2"]);
    let identities = v["identities"].as_array().unwrap();
    assert!(identities.len() >= 40, "got {}", identities.len());
    assert_eq!(v["failed"], 0);
    for row in identities {
        assert_eq!(row["passed"], true, "{}", row["identity"]);
    }

    // csv mode labels its columns
    let out = seqlab(&[
        "suite", "--name", "norms", "--trials", "2", "--output", "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("identity,mode,checks,passed,max_residual"));
}
