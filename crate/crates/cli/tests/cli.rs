//! End-to-end tests of the `formlab` binary: worked examples, exit
//! codes, envelope shape, and output plumbing.

use std::process::{Command, Output};

fn formlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formlab"))
        .args(args)
        .env_remove("FORMLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn nq_worked_example() {
    let out = formlab(&[
        "nq", "--p", "7", "--n", "1", "--L", "1,1", "--Q", "0,1,0", "--mode", "exact",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["command"], "nq");
    assert_eq!(v["payload"]["case"], "GENERIC");
    assert_eq!(v["payload"]["nq"], 3);
    assert_eq!(v["payload"]["clique"], serde_json::json!([2, 5]));
    // Without --reproducible the envelope carries a timestamp.
    assert!(v["timestamp_unix"].is_u64());
}

#[test]
fn reproducible_suppresses_timestamp() {
    let out = formlab(&["nq", "--p", "7", "--reproducible"]);
    assert!(out.status.success());
    assert!(json(&out).get("timestamp_unix").is_none());
}

#[test]
fn usage_errors_exit_2() {
    // Even p.
    let out = formlab(&["field", "--p", "4", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("p must be an odd prime"), "stderr: {msg}");

    // Non-prime p.
    let out = formlab(&["field", "--p", "9"]);
    assert_eq!(out.status.code(), Some(2));

    // Coefficient index out of range.
    let out = formlab(&["reduce", "--p", "7", "--L", "1,9"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("out of range"), "stderr: {msg}");

    // Wrong arity.
    let out = formlab(&["reduce", "--p", "7", "--L", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));

    // The zero form.
    let out = formlab(&["reduce", "--p", "7", "--L", "0,0"]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown subcommand (clap's own exit code).
    let out = formlab(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    // Guard refusal: subset oracle beyond q = 13.
    let out = formlab(&["nq", "--p", "17", "--mode", "oracle"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("oracle"), "stderr: {msg}");
}

#[test]
fn dimacs_export_is_frozen() {
    let out = formlab(&["graph", "--p", "7", "--dimacs", "--reproducible"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "c formlab capture graph p=7 n=1 L=(1,1) Q=(0,1,0)\np edge 3 1\ne 1 2\n"
    );
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = formlab(&[
        "count", "--p", "7", "--a", "3", "--b", "2", "--reproducible", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["payload"]["count"], 2);
}

#[test]
fn count_closed_and_brute_agree_via_cli() {
    let closed = formlab(&[
        "count", "--p", "13", "--L", "2,5", "--Q", "1,1,3", "--table", "--method", "closed",
        "--reproducible",
    ]);
    let brute = formlab(&[
        "count", "--p", "13", "--L", "2,5", "--Q", "1,1,3", "--table", "--method", "brute",
        "--reproducible",
    ]);
    assert!(closed.status.success() && brute.status.success());
    assert_eq!(json(&closed)["payload"]["counts"], json(&brute)["payload"]["counts"]);
}

#[test]
fn charsum_reports_are_byte_identical_for_a_fixed_seed() {
    let args = [
        "charsum",
        "--p",
        "11",
        "--experiment",
        "vinogradov",
        "--trials",
        "100",
        "--seed",
        "42",
        "--reproducible",
    ];
    let a = formlab(&args);
    let b = formlab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["payload"]["violations"], 0);
    assert_eq!(v["payload"]["trials"], 100);
}

#[test]
fn sweep_csv_is_stable_and_thread_independent() {
    let args = ["nq-sweep", "--qmax", "13", "--reproducible"];
    let a = formlab(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_formlab"))
        .args(args)
        .env("FORMLAB_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "thread count must not change the bytes");
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# formlab nq-sweep version="));
    assert_eq!(
        lines.next().unwrap(),
        "q,p,n,instance,case,status,lo,hi,upper_bound,greedy_size,vertices,runtime_ms"
    );
    // 6 fields (3, 5, 7, 9, 11, 13) x 3 instances.
    assert_eq!(lines.count(), 18);
}

#[test]
fn sweep_json_format_embeds_the_envelope() {
    let out = formlab(&["nq-sweep", "--qmax", "7", "--format", "json", "--reproducible"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["command"], "nq-sweep");
    assert_eq!(v["seed"], 1);
    assert!(v["payload"].as_array().unwrap().len() >= 9);
}

#[test]
fn composite_verification_via_cli() {
    let out = formlab(&["composite", "--modulus", "15", "--verify", "--reproducible"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["payload"]["classes"], serde_json::json!([[3, 2]]));
    assert_eq!(v["payload"]["set"], serde_json::json!([2, 5, 8, 11, 14]));
    assert_eq!(v["payload"]["verified"], true);

    let out = formlab(&[
        "composite", "--modulus", "15", "--classes", "3:2,5:1", "--verify", "--reproducible",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["payload"]["set"], serde_json::json!([11]));
}

#[test]
fn help_lists_every_subcommand() {
    let out = formlab(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for name in
        ["field", "reduce", "count", "capture", "graph", "nq", "nq-sweep", "charsum", "composite"]
    {
        assert!(text.contains(name), "--help must list {name}");
    }
}
