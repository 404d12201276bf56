//! CLI behavior: golden reports, exit codes, and environment caps.

use std::process::{Command, Output};

fn cdlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdlat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn golden_d8_json_report() {
    let output = cdlat(&["analyze", "D(8)", "--json"]);
    assert!(output.status.success());
    assert_eq!(stdout(&output), include_str!("golden/analyze_d8.json"));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(parsed["schema_version"], 1);
    assert_eq!(parsed["cd"]["member_count"], 5);
    assert_eq!(parsed["cd"]["m_star"], 16);
    assert_eq!(parsed["theorem_1_1"]["claims"][0]["passed"], true);
}

#[test]
fn golden_extraspecial_27_json_report() {
    let output = cdlat(&["analyze", "ES(3,'+')", "--json"]);
    assert!(output.status.success());
    assert_eq!(stdout(&output), include_str!("golden/analyze_es3_plus.json"));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(parsed["cd"]["measure_image"], serde_json::json!([27, 81]));
    assert_eq!(parsed["density"]["dense"], true);
}

#[test]
fn golden_s3_hasse_diagram() {
    let out = std::env::temp_dir().join(format!("cdlat-cli-hasse-{}.dot", std::process::id()));
    let output = Command::new(env!("CARGO_BIN_EXE_cdlat"))
        .args(["hasse", "S(3)", "--out"])
        .arg(&out)
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    let written = std::fs::read_to_string(&out).unwrap();
    let _ = std::fs::remove_file(&out);
    assert_eq!(written, include_str!("golden/hasse_s3.dot"));
    assert_eq!(written.matches("label=").count(), 6);
    assert_eq!(written.matches("style=filled").count(), 1);
}

#[test]
fn exit_codes_separate_user_errors_from_success() {
    assert!(cdlat(&["analyze", "S(3)"]).status.success());

    let invalid = cdlat(&["analyze", "ZM(6,2,5)"]);
    assert_eq!(invalid.status.code(), Some(1));
    let message = String::from_utf8(invalid.stderr).unwrap();
    assert!(message.contains("gcd"), "diagnostic names the constraint: {message}");

    let syntax = cdlat(&["analyze", "Nope(3)"]);
    assert_eq!(syntax.status.code(), Some(1));

    let usage = cdlat(&["analyze", "S(3)", "--no-such-flag"]);
    assert_eq!(usage.status.code(), Some(1));
}

#[test]
fn order_cap_env_var_is_honored() {
    let output = Command::new(env!("CARGO_BIN_EXE_cdlat"))
        .args(["analyze", "D(8)"])
        .env("CDLAT_MAX_ORDER", "4")
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(1));
    let message = String::from_utf8(output.stderr).unwrap();
    assert!(message.contains("cap"), "{message}");

    let bad = Command::new(env!("CARGO_BIN_EXE_cdlat"))
        .args(["analyze", "D(8)"])
        .env("CDLAT_MAX_ORDER", "many")
        .output()
        .expect("binary runs");
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn analyze_flag_overrides_the_cap() {
    let output = cdlat(&["analyze", "D(8)", "--max-order", "4"]);
    assert_eq!(output.status.code(), Some(1));
    let output = cdlat(&["analyze", "D(8)", "--max-order", "8"]);
    assert!(output.status.success());
}

#[test]
fn timings_only_appear_on_request() {
    let without = stdout(&cdlat(&["analyze", "S(3)", "--json"]));
    assert!(!without.contains("timings_ms"));
    let with = stdout(&cdlat(&["analyze", "S(3)", "--json", "--timings"]));
    let parsed: serde_json::Value = serde_json::from_str(&with).unwrap();
    assert!(parsed["timings_ms"]["enumerate_ms"].is_number());
}

#[test]
fn density_subcommand_reports_witnesses() {
    let output = cdlat(&["density", "C(4)"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("dense       false"));
    assert!(text.contains("H of order 1 [0] < K of order 4 [0, 1, 2, 3]"));

    let capped = stdout(&cdlat(&["density", "Abelian(2,2,2)", "--witness-cap", "3"]));
    assert_eq!(capped.matches("failure").count(), 3);
}

#[test]
fn survey_writes_the_requested_file() {
    let out = std::env::temp_dir().join(format!("cdlat-cli-survey-{}.json", std::process::id()));
    let output = Command::new(env!("CARGO_BIN_EXE_cdlat"))
        .args(["survey", "--max-order", "12", "--out"])
        .arg(&out)
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    assert!(stdout(&output).contains("theorem 1.2"));
    let document: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let _ = std::fs::remove_file(&out);
    assert_eq!(document["schema_version"], 1);
    assert_eq!(document["theorem_1_2"]["passed"], true);
    assert_eq!(document["theorem_1_1"]["passed"], true);
    assert!(document["group_count"].as_u64().unwrap() > 20);
}
