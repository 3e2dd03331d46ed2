//! End-to-end tests of the wallcross binary: output values, exit codes,
//! determinism, and schema validation of every JSON mode.

use std::process::{Command, Output};

fn wallcross(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallcross"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = wallcross(args);
    assert!(
        out.status.success(),
        "wallcross {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json_of(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout_of(args)).expect("valid JSON")
}

#[test]
fn walls_at_s0_reports_crossings() {
    let value = json_of(&["walls", "--chern", "1,2,-1", "--at-s0", "--json"]);
    assert_eq!(value["schema_version"], 1);
    assert_eq!(value["u_values"], serde_json::json!(["3", "1", "1/3"]));
    // the strings parse back to the exact rationals
    let crossings: Vec<num_rational::Rational64> = value["u_values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| wallcross::rat::parse_rational(s.as_str().unwrap()).unwrap())
        .collect();
    assert_eq!(
        crossings,
        vec![
            num_rational::Rational64::from_integer(3),
            num_rational::Rational64::from_integer(1),
            num_rational::Rational64::new(1, 3)
        ]
    );
}

#[test]
fn transform_marks_the_fixed_point() {
    let fixed = stdout_of(&["transform", "--chern", "1,2,-1"]);
    assert_eq!(fixed.trim(), "1,2,-1 (fixed point of Φ)");
    let moved = stdout_of(&["transform", "--chern", "1,2,0"]);
    assert_eq!(moved.trim(), "0,2,-1");
}

#[test]
fn series_table_ends_with_matching_row() {
    let table = stdout_of(&["series", "--max", "8"]);
    let last = table.lines().last().unwrap();
    assert_eq!(last, "n=8: 3 3 yes");
    assert!(!table.contains(" NO"));
}

#[test]
fn threshold_prints_exact_value() {
    assert_eq!(stdout_of(&["threshold", "-n", "5", "-k", "5"]).trim(), "3");
    assert_eq!(stdout_of(&["threshold", "-n", "7", "-k", "5"]).trim(), "1");
}

#[test]
fn diagram_writes_figure_with_expected_elements() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.svg");
    let summary = json_of(&[
        "diagram",
        "-n",
        "10",
        "--window",
        "-1/10:22/10:3",
        "--guide",
        "2",
        "-o",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(summary["walls_drawn"], 4);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<path class=\"wall\"").count(), 4);
    assert_eq!(svg.matches("<line class=\"guide\"").count(), 1);
}

#[test]
fn validation_failures_exit_2_and_name_the_flag() {
    let out = wallcross(&["walls", "--chern", "2,2,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--chern"));

    let out = wallcross(&["threshold", "-n", "5", "-k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("-k"));

    // clap rejects unknown flags with exit 2 as well
    let out = wallcross(&["walls", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn diagram_write_failure_exits_3() {
    let out = wallcross(&[
        "diagram",
        "-n",
        "3",
        "--window",
        "-1:1:2",
        "-o",
        "/nonexistent-dir/out.svg",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["walls", "-n", "10", "--json"],
        vec!["flops", "-n", "5", "--json"],
        vec![
            "pseudo-walls",
            "--chern",
            "1,2,1",
            "--region",
            "-1:1",
            "--json",
        ],
    ] {
        let first = stdout_of(&args);
        let second = stdout_of(&args);
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn n3_map_applies_points() {
    let out = stdout_of(&[
        "n3-map",
        "--p",
        "1/2,0,0,0",
        "--q",
        "0,0,0,0",
        "--y",
        "0,0,0,0",
        "--xhat",
        "0,0,0,0",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines,
        vec![
            "p' = (1/2,0,0,0)",
            "q' = (0,0,0,0)",
            "y' = (1/2,0,0,0)",
            "xhat' = (1/2,0,0,0)",
        ]
    );
}

#[test]
fn every_json_mode_validates_against_the_shipped_schema() {
    let schema_text = include_str!("../schema/wallcross-output.schema.json");
    let schema: serde_json::Value = serde_json::from_str(schema_text).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");

    let dir = tempfile::tempdir().unwrap();
    let diagram_out = dir.path().join("d.svg");
    let commands: Vec<Vec<&str>> = vec![
        vec!["walls", "-n", "5", "--json"],
        vec!["walls", "--chern", "1,2,-1", "--at-s0", "--json"],
        vec![
            "pseudo-walls",
            "--chern",
            "1,2,-1",
            "--region",
            "0:1",
            "--rank-bound",
            "4",
            "--json",
        ],
        vec!["chambers", "-n", "5", "--json"],
        vec!["flops", "-n", "5", "--json"],
        vec!["transform", "--chern", "1,2,-1", "--json"],
        vec!["pair", "--left", "1,1,1", "--right", "0,1,0", "--json"],
        vec!["series", "--max", "10", "--json"],
        vec!["threshold", "-n", "5", "-k", "5", "--json"],
        vec![
            "diagram",
            "-n",
            "10",
            "--window",
            "-1/10:22/10:3",
            "-o",
            diagram_out.to_str().unwrap(),
            "--json",
        ],
        vec!["n3-map", "--json"],
        vec![
            "n3-map",
            "--p",
            "1/2,0,0,0",
            "--q",
            "1/3,0,0,0",
            "--y",
            "0,1/5,0,0",
            "--xhat",
            "0,0,0,7/9",
            "--json",
        ],
    ];
    for args in commands {
        let value = json_of(&args);
        let errors: Vec<String> = validator
            .iter_errors(&value)
            .map(|e| e.to_string())
            .collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}
