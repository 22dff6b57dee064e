//! End-to-end runs of the `nearprime` binary.

use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nearprime"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn catalog_file(key: &str) -> String {
    let manifest = env!("CARGO_MANIFEST_DIR");
    format!("{manifest}/../../fixtures/{key}.json")
}

#[test]
fn classify_single_verdict_prints_bare_boolean() {
    let o = run(&["classify", &catalog_file("klein4"), "--ideal", "0", "--variant", "0", "--notion", "classical"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("true"));
}

#[test]
fn classify_failure_prints_replayable_witness() {
    let o = run(&["classify", "klein4", "--ideal", "0", "--variant", "c", "--notion", "classical"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("false"));
    let replay = text
        .lines()
        .find_map(|l| l.strip_prefix("replay: --check-witness "))
        .expect("replay line")
        .trim_matches('"')
        .to_string();
    let o = run(&["classify", "klein4", "--ideal", "0", "--variant", "c", "--notion", "classical", "--check-witness", &replay]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("witness replays: true"));
}

#[test]
fn quoted_klein_witnesses_replay() {
    for (variant, w) in [("2", "A=0,2;B=0,2;N=0,1,2,3"), ("c", "a=3;b=2;N=0,1,2,3")] {
        let o = run(&["classify", "klein4", "--ideal", "0", "--variant", variant, "--notion", "classical", "--check-witness", w]);
        assert_eq!(code(&o), 0, "variant {variant}");
    }
}

#[test]
fn bogus_witness_does_not_replay() {
    let o = run(&["classify", "klein4", "--ideal", "0", "--variant", "c", "--notion", "classical", "--check-witness", "a=0;b=0;N=0,1,2,3"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness replays: false"));
}

#[test]
fn file_and_catalog_key_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.json");
    fs::copy(catalog_file("klein4"), &path).unwrap();
    let args = |f: &str| run(&["--json", "classify", f, "--ideal", "0"]);
    let a = args(path.to_str().unwrap());
    let b = args("klein4");
    assert_eq!(code(&a), 0);
    let parse = |o: &Output| serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap();
    let (a, b) = (parse(&a), parse(&b));
    assert!(a.as_array().is_some_and(|v| !v.is_empty()));
    assert_eq!(a, b);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [
        vec!["--json", "catalog", "run"],
        vec!["--json", "classify", "z3"],
        vec!["--json", "--jobs", "4", "verify", "dn32"],
        vec!["--json", "enumerate", "klein4", "--kind", "subgroup"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(!a.stdout.is_empty(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        serde_json::from_slice::<serde_json::Value>(&a.stdout).expect("valid JSON");
    }
}

#[test]
fn invalid_json_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{ not json").unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn non_group_addition_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        r#"{"elements":["0","1"],"add":[[0,1],[1,1]],"mul":[[0,0],[0,0]]}"#,
    )
    .unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn strict_rejects_non_zero_symmetric() {
    assert_eq!(code(&run(&["validate", "z6"])), 0);
    assert_eq!(code(&run(&["--strict", "validate", "z6"])), 1);
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(code(&run(&["frobnicate"])), 3);
    assert_eq!(code(&run(&["validate", "no-such-key"])), 3);
    assert_eq!(code(&run(&["classify", "klein4", "--ideal", "0", "--variant", "7"])), 3);
    assert_eq!(code(&run(&["enumerate", "klein4", "--kind", "sideways"])), 3);
    assert_eq!(code(&run(&["catalog", "show", "nope"])), 3);
}

#[test]
fn catalog_run_reports_contradictions() {
    let o = run(&["catalog", "run"]);
    assert_eq!(code(&o), 2);
    let o = run(&["catalog", "run", "klein4", "z3", "dn32"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn verify_exits_zero_on_valid_examples() {
    for key in ["klein4", "z3", "dn32"] {
        let o = run(&["verify", key]);
        assert_eq!(code(&o), 0, "{key}: {}", stdout(&o));
    }
}

#[test]
fn enumerate_counts() {
    let o = run(&["enumerate", "dn32", "--kind", "subgroup", "--count"]);
    assert_eq!(stdout(&o).trim(), "6");
    let o = run(&["enumerate", "klein4", "--kind", "r-submodule", "--generate", "1"]);
    assert_eq!(stdout(&o).trim(), "{0, 1}");
}

#[test]
fn nearfield_and_power() {
    let o = run(&["nearfield", "dn32"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("81/81"));

    let o = run(&["--json", "power", "dn32", "-n", "2"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 81);
    assert_eq!(v["r_ideals"], 4);
    assert_eq!(v["r_submodules"], 12);

    assert_eq!(code(&run(&["power", "dn32", "-n", "2", "--verify"])), 0);
    assert_eq!(code(&run(&["power", "klein4", "-n", "2", "--verify"])), 1);
}

#[test]
fn emitted_power_module_loads_back() {
    let o = run(&["power", "z3", "-n", "2", "--emit-json"]);
    assert_eq!(code(&o), 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z3sq.json");
    fs::write(&path, &o.stdout).unwrap();
    let o = run(&["--json", "validate", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn annihilator_of_klein_column() {
    let o = run(&["ann", "klein4", "--set", "0,1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("Ann({0, 1}) = {0, 1, 2, 3}"));
}

#[test]
fn msystem_complement_of_zero() {
    let o = run(&["msystem", "klein4", "--set", "1,2,3", "--variant", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("m_0-system: true"));
}
