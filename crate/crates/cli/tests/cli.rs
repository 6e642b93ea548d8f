//! End-to-end checks of the command-line surface: exit codes, the
//! documented examples, determinism of reports, and schema validity of the
//! JSON output.

use std::process::{Command, Output};

fn nilex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilex"))
        .args(args)
        .env_remove("NILEX_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn check_passes_on_catalog_algebra() {
    let out = nilex(&["check", "A4_06"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("pass"));
    assert!(text.contains("index 5"));
    assert!(text.contains("dim Ann = 1"));
}

#[test]
fn check_reads_table_files() {
    let dir = std::env::temp_dir().join("nilex-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.alg");
    std::fs::write(&good, "algebra G dim 2\ne1*e1 = e2\n").unwrap();
    let out = nilex(&["check", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let bad = dir.join("bad.alg");
    std::fs::write(&bad, "algebra G dim 2\ne1*e1 = e9\n").unwrap();
    let out = nilex(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
}

#[test]
fn usage_errors_exit_2() {
    let out = nilex(&["check", "A9_99"]);
    assert_eq!(out.status.code(), Some(2));
    let out = nilex(&["check", "A4_04"]); // missing --param alpha=...
    assert_eq!(out.status.code(), Some(2));
    let out = nilex(&["catalog", "A6_08", "--param", "beta=1"]); // excluded
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("excluded"));
}

#[test]
fn cohomology_json_dims() {
    let out = nilex(&["cohomology", "A5_06", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dims"]["Z2"], 6);
    assert_eq!(v["dims"]["B2"], 4);
    assert_eq!(v["dims"]["H2"], 2);
}

#[test]
fn iso_note_example() {
    let out = nilex(&[
        "iso", "A6_08", "--param", "beta=3/2", "A6_09", "--param", "beta=3/2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("isomorphic: verified witness"));
}

#[test]
fn iso_separates_distinct_classes() {
    let out = nilex(&["iso", "A5_06", "A5_07"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("non-isomorphic"));
}

#[test]
fn extend_builds_the_chain_extension() {
    let dir = std::env::temp_dir().join("nilex-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    // the symmetric cocycle on A4_04(1) whose extension is A5_06
    let cocycle = dir.join("nabla2.mat");
    std::fs::write(&cocycle, "0 0 0 1\n0 0 1 0\n0 1 0 0\n1 0 0 0\n").unwrap();
    let out = nilex(&[
        "extend",
        "A4_04",
        "--param",
        "alpha=1",
        "--cocycle",
        cocycle.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("admissible: true"));
    assert!(text.contains("e1*e4 = e5"));
    assert!(text.contains("e4*e1 = e5"));
}

#[test]
fn catalog_prints_tables() {
    let out = nilex(&["catalog", "A6_13"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("e1*e4 = 3/2 e5"));
    assert!(text.contains("e4*e1 = 1/2 e5 + e6"));
}

#[test]
fn verify_paper_is_deterministic_and_schema_valid() {
    let run1 = nilex(&["verify-paper", "--format", "json", "--seed", "12345"]);
    assert_eq!(run1.status.code(), Some(0), "verify-paper must pass");
    let run2 = nilex(&["verify-paper", "--format", "json", "--seed", "12345"]);
    assert_eq!(stdout(&run1), stdout(&run2), "same seed, same bytes");
    let run3 = nilex(&[
        "verify-paper", "--format", "json", "--seed", "12345", "--jobs", "3",
    ]);
    assert_eq!(
        stdout(&run1),
        stdout(&run3),
        "worker count must not affect the report"
    );

    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../schema/verify-paper.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let instance: serde_json::Value = serde_json::from_str(&stdout(&run1)).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(&instance)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");

    // seed is honored through the environment as well
    let env_run = Command::new(env!("CARGO_BIN_EXE_nilex"))
        .args(["verify-paper", "--format", "json"])
        .env("NILEX_SEED", "12345")
        .output()
        .unwrap();
    assert_eq!(stdout(&run1), String::from_utf8_lossy(&env_run.stdout));
}
