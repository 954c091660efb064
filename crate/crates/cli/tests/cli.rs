//! End-to-end tests that spawn the `multiplex` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiplex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn count_all_methods_agree_on_the_ground_state() {
    let out = run(&[
        "count", "--m", "3", "--from", "3", "--to", "3", "--length", "5",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("brute: 660"));
    assert!(text.contains("matrix: 660"));
    assert!(text.contains("capped: 660"));
    assert!(text.contains("verdict: match"));
}

#[test]
fn count_single_method_prints_only_the_number() {
    let out = run(&[
        "count", "--m", "2", "--from", "2", "--to", "2", "--length", "0", "--method", "brute",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn count_transfer_method_matches() {
    let out = run(&[
        "count", "--m", "2", "--from", "1,2", "--to", "2,1", "--length", "4", "--method",
        "transfer",
    ]);
    assert_eq!(code(&out), 0);
    let brute = run(&[
        "count", "--m", "2", "--from", "1,2", "--to", "2,1", "--length", "4", "--method", "brute",
    ]);
    assert_eq!(stdout(&out), stdout(&brute));
}

#[test]
fn count_one_step_transition() {
    let out = run(&[
        "count", "--m", "2", "--from", "1,2", "--to", "2,1", "--length", "1", "--method", "matrix",
    ]);
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn count_json_is_versioned() {
    let out = run(&[
        "count", "--m", "3", "--from", "3", "--to", "3", "--length", "5", "--format", "json",
    ]);
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(payload["schemaVersion"], 1);
    assert_eq!(payload["counts"]["brute"], "660");
    assert_eq!(payload["agree"], true);
}

#[test]
fn sequence_reproduces_a_table_row() {
    let out = run(&["sequence", "--state", "2,2", "--m", "2", "--terms", "7"]);
    assert_eq!(stdout(&out).trim(), "1,3,21,162,1305,10719,88830");
}

#[test]
fn sequence_primitive_row() {
    let out = run(&[
        "sequence",
        "--state",
        "3",
        "--m",
        "3",
        "--terms",
        "7",
        "--primitive",
    ]);
    assert_eq!(stdout(&out).trim(), "1,3,13,67,369,2083,11869");
}

#[test]
fn sequence_of_the_empty_state() {
    let out = run(&["sequence", "--state", "", "--m", "1", "--terms", "3"]);
    assert_eq!(stdout(&out).trim(), "1,1,1");
}

#[test]
fn sequence_spot_check_passes() {
    let out = run(&[
        "sequence",
        "--state",
        "2,1",
        "--m",
        "3",
        "--terms",
        "6",
        "--spot-check",
        "2",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn sequence_csv_rows() {
    let out = run(&[
        "sequence", "--state", "2", "--m", "2", "--terms", "3", "--format", "csv",
    ]);
    assert_eq!(stdout(&out), "n,count\n1,1\n2,3\n3,10\n");
}

#[test]
fn genfunc_matches_reference_fractions() {
    let out = run(&["genfunc", "--state", "1,1,1", "--m", "2"]);
    assert_eq!(stdout(&out).trim(), "(x - 5x^2 + 7x^3) / (1 - 8x + 13x^2)");
    let out = run(&["genfunc", "--state", "1,1,1", "--m", "2", "--primitive"]);
    assert_eq!(
        stdout(&out).trim(),
        "(x - 5x^2 + 7x^3) / (1 - 7x + 8x^2 + 7x^3)"
    );
}

#[test]
fn genfunc_expansion_matches_sequence_output() {
    let gf = run(&["genfunc", "--state", "3", "--m", "3", "--terms", "9"]);
    let text = stdout(&gf);
    let expansion = text.lines().nth(1).unwrap();
    let seq = run(&["sequence", "--state", "3", "--m", "3", "--terms", "9"]);
    assert_eq!(expansion, stdout(&seq).trim());
}

#[test]
fn genfunc_json_has_coefficient_arrays() {
    let out = run(&["genfunc", "--state", "2", "--m", "2", "--format", "json"]);
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(payload["numerator"], serde_json::json!(["0", "1", "-2"]));
    assert_eq!(payload["denominator"], serde_json::json!(["1", "-5", "5"]));
}

#[test]
fn genfunc_reduced_flag_runs() {
    let out = run(&[
        "genfunc",
        "--state",
        "2",
        "--m",
        "2",
        "--reduced",
        "--terms",
        "4",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().nth(1).unwrap().starts_with("1,3,10"));
}

#[test]
fn recurrence_prints_polynomial_and_relation() {
    let out = run(&["recurrence", "--balls", "3", "--m", "3"]);
    let text = stdout(&out);
    assert!(text.contains("characteristic polynomial: x^3 - 10x^2 + 27x - 20"));
    assert!(text.contains("recurrence: a(n+3) = 10 a(n+2) - 27 a(n+1) + 20 a(n)"));
    assert!(text.contains("partitions: 3; 2,1; 1,1,1"));
}

#[test]
fn validate_worked_example_with_trajectory() {
    let out = run(&[
        "validate",
        "--m",
        "2",
        "--pattern",
        "[2,0][3,1][3,3][0,0]",
        "--state",
        "1,2",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("valid: true"));
    assert!(text.contains("balls: 3"));
    assert!(text.contains("trajectory: 1,2 -> 2,1 -> 2,0,1 -> 0,1,2 -> 1,2"));
}

#[test]
fn validate_single_no_throw() {
    let out = run(&["validate", "--m", "1", "--pattern", "[0]"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("balls: 0"));
}

#[test]
fn validate_residue_example() {
    let out = run(&["validate", "--m", "2", "--pattern", "[2,2][0,0]"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("balls: 2"));
}

#[test]
fn validate_infers_capacity() {
    let out = run(&[
        "validate",
        "--pattern",
        "[2,0][3,1][3,3][0,0]",
        "--format",
        "json",
    ]);
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(payload["pattern"]["m"], 2);
    assert_eq!(
        payload["pattern"]["throws"],
        serde_json::json!([[2, 0], [3, 1], [3, 3], [0, 0]])
    );
    assert_eq!(payload["valid"], true);
}

#[test]
fn validate_invalid_pattern_exits_one() {
    let out = run(&["validate", "--m", "2", "--pattern", "[2,0][1,1]"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("valid: false"));
    assert!(stdout(&out).contains("reason: residue coverage failed"));
}

#[test]
fn validate_simulation_mismatch_exits_one() {
    let out = run(&[
        "validate",
        "--m",
        "2",
        "--pattern",
        "[2,0][3,1][3,3][0,0]",
        "--state",
        "2,1",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("simulation failed"));
}

#[test]
fn validate_syntax_error_is_a_usage_error() {
    let out = run(&["validate", "--m", "2", "--pattern", "[5"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("offset 2"));
}

#[test]
fn tables_reproduce_everything() {
    let out = run(&["tables"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("14/14 rows reproduced"));
}

#[test]
fn tables_single_row() {
    let out = run(&["tables", "--row", "2,1:3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("2/2 rows reproduced"));
}

#[test]
fn tables_json_report() {
    let out = run(&["tables", "--format", "json"]);
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(payload["reproduced"], 14);
    assert_eq!(payload["total"], 14);
    assert_eq!(payload["rows"].as_array().unwrap().len(), 14);
}

#[test]
fn tables_unknown_row_is_a_usage_error() {
    let out = run(&["tables", "--row", "9,9:9"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn enumerate_lists_the_worked_example_walk() {
    let out = run(&[
        "enumerate",
        "--m",
        "2",
        "--from",
        "1,2",
        "--to",
        "1,2",
        "--length",
        "4",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 62);
    assert!(text
        .lines()
        .any(|l| l == "1,2 [2,0] 2,1 [3,1] 2,0,1 [3,3] 0,1,2 [0,0] 1,2"));
}

#[test]
fn enumerate_respects_the_limit() {
    let out = run(&[
        "enumerate",
        "--m",
        "2",
        "--from",
        "1,2",
        "--to",
        "1,2",
        "--length",
        "4",
        "--limit",
        "5",
    ]);
    assert_eq!(stdout(&out).lines().count(), 5);
    let note = String::from_utf8(out.stderr).unwrap();
    assert!(note.contains("listed 5 of 62 walks"));
}

#[test]
fn enumerate_json_steps_schema() {
    let out = run(&[
        "enumerate",
        "--m",
        "3",
        "--from",
        "3",
        "--to",
        "3",
        "--length",
        "1",
        "--format",
        "json",
    ]);
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(payload["count"], "1");
    let walk = &payload["walks"][0];
    assert_eq!(walk[0]["state"], "3");
    assert_eq!(walk[0]["throws"], serde_json::json!([1, 1, 1]));
    assert_eq!(walk[1]["state"], "3");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = [
        "enumerate", "--m", "2", "--from", "2,1", "--to", "2,1", "--length", "3", "--format",
        "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(code(&first), code(&second));
}

#[test]
fn bad_state_text_is_a_usage_error() {
    let out = run(&[
        "count", "--m", "2", "--from", "x", "--to", "2", "--length", "1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["count", "--nope"]);
    assert_eq!(code(&out), 2);
}
