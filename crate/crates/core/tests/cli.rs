use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qtop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtop"))
        .args(args)
        .env_remove("QTOP_CATALOG")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qtop-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn classify_catalog_space() {
    let out = qtop(&["classify", "@sierpinski", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["separation"]["T0"], true);
    assert_eq!(v["separation"]["T1"], false);
    assert_eq!(v["components"], 1);
}

#[test]
fn inline_and_wrapped_inputs_agree() {
    let inline = qtop(&["classify", r#"{"n":2,"opens":[[],[1],[0,1]]}"#, "--json"]);
    let wrapped = qtop(&[
        "classify",
        r#"{"name":"s","kind":"space","payload":{"n":2,"opens":[[],[1],[0,1]]}}"#,
        "--json",
    ]);
    assert_eq!(inline.stdout, wrapped.stdout);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(qtop(&["classify", "@no-such-space"]).status.code(), Some(2));
    assert_eq!(
        qtop(&["classify", r#"{"n":2,"opens":[[0]]}"#, "--strict"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qtop(&["suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        qtop(&["search", "--predicate", "T0 &", "--n", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn synth_then_verify_and_tamper() {
    let dir = scratch("bundle");
    let path = dir.join("bundle.json");
    let p = path.to_str().unwrap();
    let out = qtop(&[
        "synth",
        "--base",
        "@sierpinski-entourage",
        "--member",
        "0",
        "--json",
        "--out",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut bundle: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(bundle["d"]["values"][1][0], serde_json::json!({"num": 1, "exp": 0}));
    assert_eq!(qtop(&["verify", p]).status.code(), Some(0));

    bundle["d"]["values"][1][0] = serde_json::json!({"num": 1, "exp": 1});
    fs::write(&path, serde_json::to_string(&bundle).unwrap()).unwrap();
    assert_eq!(qtop(&["verify", p]).status.code(), Some(1));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_claims_over_base() {
    let out = qtop(&["verify", "--claims", "@path-5"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn enumerate_counts() {
    let out = qtop(&["enumerate", "4", "--count", "--json"]);
    assert_eq!(json(&out)["count"], 355);
}

#[test]
fn search_finds_sierpinski_spaces() {
    let out = qtop(&[
        "search",
        "--predicate",
        "T0 & !T1",
        "--n",
        "2",
        "--min-n",
        "2",
        "--json",
    ]);
    let v = json(&out);
    assert_eq!(v["matched"], 2);
    let w8 = qtop(&[
        "search",
        "--predicate",
        "T0 & !T1",
        "--n",
        "2",
        "--min-n",
        "2",
        "--json",
        "--workers",
        "8",
    ]);
    assert_eq!(out.stdout, w8.stdout);
    assert_eq!(
        json(&qtop(&["search", "--predicate", "false", "--n", "3", "--json"]))["matched"],
        0
    );
}

#[test]
fn monoid_commands() {
    let out = qtop(&["monoid", "validate", "@z4-coset", "--json"]);
    assert_eq!(json(&out)["group"]["topological"], true);
    let out = qtop(&["monoid", "uniformity", "@sierpinski-monoid", "--which", "L", "--json"]);
    assert_eq!(json(&out)["generates_topology"], true);
    let out = qtop(&[
        "monoid",
        "synth",
        "@sierpinski-monoid",
        "--side",
        "left",
        "--nbhd",
        "0,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn base_rotund_reports_counterexample() {
    let out = qtop(&["base", "rotund", "@khalimsky-4", "--kind", "point", "--json"]);
    let v = json(&out);
    assert_eq!(v["point"]["rotund"], false);
    assert!(v["point"]["counterexample"]["point"].is_u64());
}

#[test]
fn catalog_directory_override() {
    let dir = scratch("catalog");
    fs::create_dir_all(dir.join("spaces")).unwrap();
    fs::write(
        dir.join("spaces/two-point.json"),
        r#"{"name":"two-point","kind":"space","payload":{"n":2,"opens":[[],[0,1]]}}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qtop"))
        .args(["classify", "@two-point", "--json"])
        .env("QTOP_CATALOG", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["separation"]["T0"], false);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn suite_json_is_worker_independent() {
    let one = qtop(&["suite", "rotund", "--json", "--seed", "5"]);
    let many = qtop(&["suite", "rotund", "--json", "--seed", "5", "--workers", "8"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}
