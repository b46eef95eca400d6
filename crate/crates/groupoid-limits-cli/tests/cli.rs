//! End-to-end tests of the binary: exit codes, pinned example output,
//! file handling, and byte-level determinism of JSON reports.

use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupoid-limits"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("terminated normally")
}

const COVER_B: &str = r#"{
    "space": { "kind": "intervals", "components": [["0", "1"]] },
    "prefix": [
        [
            [ { "lo": "0", "hi": "1", "lo_closed": true, "hi_closed": true } ],
            [ { "lo": "1/2", "hi": "1", "lo_closed": false, "hi_closed": true } ]
        ]
    ],
    "tail_cycle": [
        [ [ { "lo": "0", "hi": "1", "lo_closed": true, "hi_closed": true } ] ]
    ]
}"#;

#[test]
fn gcheck_example_prints_the_pinned_range_line() {
    let out = run(&["example", "gcheck_not_etale"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("range [1/2,3/4), relatively open: false"), "got: {text}");
    assert!(text.contains("result: PASS"));
}

#[test]
fn every_scripted_example_passes() {
    for name in ["rem_sharp", "gcheck_not_etale", "ginfty_not_loc_compact", "separation", "uhf_2inf"] {
        let out = run(&["example", name]);
        assert_eq!(code(&out), 0, "{name} stderr: {}", stderr(&out));
        assert!(stdout(&out).contains("result: PASS"), "{name} got: {}", stdout(&out));
    }
}

#[test]
fn example_reports_in_json_too() {
    let out = run(&["example", "rem_sharp", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["name"], "rem_sharp");
    assert_eq!(doc["ok"], true);
    assert!(doc["checks"].as_array().unwrap().len() >= 8);
}

#[test]
fn isometry_check_passes_every_trial() {
    let out = run(&[
        "isometry-check",
        "--input",
        "example_A",
        "--level",
        "1",
        "--seed",
        "42",
        "--trials",
        "50",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("passed: 50/50"), "got: {text}");
    assert!(text.contains("isometry: PASS"));
}

#[test]
fn json_reports_are_byte_identical_for_one_seed() {
    let args = [
        "report",
        "--input",
        "example_B",
        "--seed",
        "7",
        "--max-level",
        "1",
        "--trials",
        "3",
        "--format",
        "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["isometry"]["passed"], 3);
}

#[test]
fn validate_and_chambers_accept_a_cover_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("cover.json");
    std::fs::write(&path, COVER_B).unwrap();
    let p = path.to_str().unwrap();

    let out = run(&["validate", "--input", p]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("valid: true"));

    let out = run(&["chambers", "--input", p, "--level", "0", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["omega"], 2);
    assert_eq!(doc["chambers"].as_array().unwrap().len(), 3);
    assert_eq!(doc["axioms_hold"], true);
}

#[test]
fn norms_report_the_seeded_element() {
    let dir = TempDir::new().unwrap();
    let elem = dir.path().join("elem.json");
    std::fs::write(&elem, r#"{ "level": 0, "domain": "open", "seed": 5 }"#).unwrap();
    let out = run(&["norms", "--input", "example_A", "--element", elem.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("summing norm:"));
    assert!(text.contains("reduced norm:"));
    assert!(text.contains("chamber 2:"));
}

#[test]
fn mismatched_cocycle_level_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let elem = dir.path().join("elem.json");
    let sigma = dir.path().join("sigma.json");
    std::fs::write(&elem, r#"{ "level": 0, "domain": "open", "seed": 5 }"#).unwrap();
    std::fs::write(&sigma, r#"{ "level": 1, "kind": "coboundary", "seed": 9 }"#).unwrap();
    let out = run(&[
        "norms",
        "--input",
        "example_A",
        "--element",
        elem.to_str().unwrap(),
        "--cocycle",
        sigma.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2, "stdout: {}", stdout(&out));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn support_witness_value_is_one() {
    let out = run(&["support-witness", "--input", "example_A", "(0|2, -1/2, |2)"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("witness level: 0"));
    assert!(text.contains("value: 1+0i"));
}

#[test]
fn support_witness_outside_the_limit_is_an_input_error() {
    let out = run(&["support-witness", "--input", "example_A", "(0|2, 0, |2)"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn separate_answers_both_ways() {
    let out = run(&[
        "separate",
        "--input",
        "example_A",
        "(2,0|2, 0, 2,0|2)",
        "(2,1|2, 0, 2,1|2)",
        "--max-level",
        "6",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("separated: false"));

    let out = run(&["separate", "--input", "example_A", "(|2, -1/2, |2)", "(|2, 1/2, |2)"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("separated: true at level 0"));
}

#[test]
fn uhf_tower_reports_dimensions_and_holds() {
    let out = run(&["uhf", "--input", "uhf(2)", "--max-level", "3", "--trials", "2", "--seed", "1"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("dimensions through level 3: 2, 4, 8, 16"));
    assert!(text.contains("direct limit: PASS"));
}

#[test]
fn bad_inputs_exit_with_code_two() {
    let dir = TempDir::new().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "not json").unwrap();

    let cases: Vec<Vec<&str>> = vec![
        vec!["chambers", "--input", "nonexistent_example"],
        vec!["validate", "--input", broken.to_str().unwrap()],
        vec!["isometry-check", "--input", "example_A", "--level", "0", "--tolerance", "0.5"],
        vec!["isometry-check", "--input", "example_A", "--level", "0", "--trials", "0"],
        vec!["support-witness", "--input", "example_A", "not an arrow"],
        vec!["uhf", "--input", "example_A", "--max-level", "2"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(code(&out), 2, "args {args:?} stdout: {}", stdout(&out));
        assert!(stderr(&out).contains("error:"), "args {args:?}");
    }
}
