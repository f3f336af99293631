//! End-to-end checks of the command-line binary: wire formats, exit codes,
//! and file output, driven through real process invocations.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autorbit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("stdout is JSON")
}

#[test]
fn minimize_text_reports_word_and_chain() {
    let out = run(&["minimize", "x1 x2 x1 x2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("word: x1 x2 x1 x2"));
    assert!(text.contains("minimal: x2^2"));
    assert!(text.contains("length: 2"));
    assert!(text.contains("steps: 1"));
}

#[test]
fn minimize_json_has_schema_and_steps() {
    let out = run(&["minimize", "x1 x2 x1 x2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["minimal"], "x2^2");
    assert_eq!(v["length"], 2);
    assert_eq!(v["steps"].as_array().unwrap().len(), 1);
}

#[test]
fn count_matches_known_value() {
    let out = run(&["count", "x1^2 x2^3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 16);
    assert_eq!(v["truncated"], false);
}

#[test]
fn count_dump_writes_sorted_members() {
    let path = std::env::temp_dir().join(format!("autorbit-dump-{}.txt", std::process::id()));
    let out = run(&["count", "x1^2 x2^3", "--dump", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dumped = std::fs::read_to_string(&path).expect("dump file written");
    std::fs::remove_file(&path).ok();
    let lines: Vec<&str> = dumped.lines().collect();
    assert_eq!(lines.len(), 16);
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted);
    assert!(lines.contains(&"x1^2 x2^3"));
}

#[test]
fn count_over_limit_exits_3_with_lower_bound() {
    let out = run(&[
        "count",
        "x1^2 x2^2 x3 x2^-1 x3 x2 x3^3",
        "--max-members",
        "500",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["truncated"], true);
    assert_eq!(v["count_lower_bound"], 501);
    assert!(v.get("count").is_none());
}

#[test]
fn analyze_json_reports_structure() {
    let out = run(&["analyze", "x1^2 x2^3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["level_set_size"], 16);
    assert_eq!(v["profile"]["total"], 2);
    assert_eq!(v["profile"]["per_generator"]["x1"], 1);
    assert_eq!(v["hypothesis"]["minimal"], true);
    assert!(v["components"].as_array().unwrap().len() >= 1);
}

#[test]
fn analyze_minimizes_nonminimal_input_with_notice() {
    let out = run(&["analyze", "x1 x2 x1 x2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["minimized"], true);
    assert_eq!(v["analyzed"], "x2^2");
    assert!(v["notice"].as_str().unwrap().contains("not minimal"));
}

#[test]
fn verify_csv_header_is_exact() {
    let out = run(&["verify", "f2", "--ell", "3..4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "suite,rank,ell,word_length,computed_N,predicted,relation,pass,millis"
    );
    for line in text.lines().skip(1) {
        assert_eq!(line.split(',').count(), 9);
        assert!(line.contains(",true,"));
    }
}

#[test]
fn verify_json_reports_pass() {
    let out = run(&["verify", "thm13", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suite"], "thm13");
    assert_eq!(v["pass"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn csv_outside_verify_is_a_usage_error() {
    let out = run(&["minimize", "x1 x2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("csv"));
}

#[test]
fn word_syntax_error_exits_2() {
    let out = run(&["minimize", "x1^"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn rank_out_of_range_exits_2() {
    let out = run(&["count", "x1 x3", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_exits_2() {
    let out = run(&["minimize", "x1", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failing_row_fails_the_report() {
    // The report layer decides the process exit; a failing check must sink
    // the whole suite.
    use autorbit::{Check, Row, SuiteReport};
    let good = Row::new("t", 2, 3, "x1".into(), 1, 7, Check::Equals(7), 0);
    let bad = Row::new("t", 2, 3, "x1".into(), 1, 7, Check::Equals(8), 0);
    assert!(good.pass);
    assert!(!bad.pass);
    let report = SuiteReport::from_rows("t", vec![good, bad], 0);
    assert!(!report.pass);
}

#[test]
fn rational_bound_compares_exactly() {
    use autorbit::Check;
    // 40 >= 81/2 is false even though both round to 40; the comparison must
    // stay in integers.
    let tight = Check::AtLeast {
        numerator: 81,
        denominator: 2,
    };
    assert!(!tight.passes(40));
    assert!(tight.passes(41));
}
