//! End-to-end tests against the compiled binary: output values, formats,
//! exit codes, and determinism of the verification reports.

use std::process::{Command, Output};

use pseudo_homfly::braid::PseudoWord;
use pseudo_homfly::coeff::ExtScalar;
use pseudo_homfly::invariant::{induced_trace, invariant_p};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudo-homfly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn compute_single_pseudo_crossing_is_one() {
    let out = run(&["compute", "--word", "p1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn compute_unknot_via_empty_word() {
    let out = run(&["compute", "--word", "", "--strands", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn compute_accepts_leading_hyphen_letters() {
    let out = run(&["compute", "--word", "-1"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn compute_json_round_trips_to_the_library_value() {
    let out = run(&["compute", "--word", "1 p1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: ExtScalar = serde_json::from_str(stdout(&out).trim()).unwrap();
    let word = PseudoWord::parse("1 p1", None).unwrap();
    assert_eq!(value, invariant_p(&word));
}

#[test]
fn trace_json_round_trips_to_the_library_value() {
    let out = run(&["trace", "--word", "p1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: ExtScalar = serde_json::from_str(stdout(&out).trim()).unwrap();
    let word = PseudoWord::parse("p1", None).unwrap();
    assert_eq!(value, induced_trace(&word));
}

#[test]
fn three_formulations_print_equal_values() {
    let word = "1 p1 -2 p1";
    let mut values = Vec::new();
    for cmd in ["compute", "statesum", "skein-eval"] {
        let out = run(&[cmd, "--word", word, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{cmd} failed: {}", stderr(&out));
        values.push(serde_json::from_str::<ExtScalar>(stdout(&out).trim()).unwrap());
    }
    assert_eq!(values[0], values[1]);
    assert_eq!(values[0], values[2]);
}

#[test]
fn homfly_rejects_pseudo_words() {
    let out = run(&["homfly", "--word", "1 p1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("pseudo"), "stderr: {}", stderr(&out));
}

#[test]
fn homfly_of_a_classical_word_succeeds() {
    let out = run(&["homfly", "--word", "1 1 1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).trim().is_empty());
}

#[test]
fn parse_error_names_the_offending_token() {
    let out = run(&["compute", "--word", "1 x7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("x7"), "stderr: {}", stderr(&out));
}

#[test]
fn zero_index_is_rejected() {
    let out = run(&["compute", "--word", "p0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("p0"), "stderr: {}", stderr(&out));
}

#[test]
fn statesum_cap_exhaustion_is_exit_three() {
    let out = run(&["statesum", "--word", "p1 p1 p1", "--state-cap", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("cap"), "stderr: {}", stderr(&out));
    // with room it succeeds
    let out = run(&["statesum", "--word", "p1 p1 p1", "--state-cap", "8"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_suite_passes_and_reports_json() {
    let out = run(&[
        "verify",
        "markov",
        "--trials",
        "3",
        "--max-strands",
        "3",
        "--max-len",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let reports: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(reports[0]["check"], "markov");
    assert_eq!(reports[0]["instances"], 15);
    assert_eq!(reports[0]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_text_format_summarizes() {
    let out = run(&["verify", "rho", "--max-strands", "3", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("rho:"), "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("0 failures"));
}

#[test]
fn verify_unknown_suite_is_exit_two() {
    let out = run(&["verify", "jones"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("jones"));
}

#[test]
fn verify_reports_are_deterministic_up_to_timing() {
    let args = [
        "verify",
        "all",
        "--trials",
        "2",
        "--max-strands",
        "3",
        "--max-len",
        "3",
        "--seed",
        "11",
    ];
    let mut normalized = Vec::new();
    for _ in 0..2 {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0));
        let mut reports: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        for r in reports.as_array_mut().unwrap() {
            // wall-clock timing is the one legitimately varying field
            r["elapsed_ms"] = 0.into();
        }
        normalized.push(reports);
    }
    assert_eq!(normalized[0], normalized[1]);
}
