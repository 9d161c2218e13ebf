use std::process::{Command, Output};

fn qhopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhopf")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn passing_suite_exits_zero() {
    let out = qhopf(&["--model", "eq2-hyperboloid", "--suite", "presentation"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# eq2-hyperboloid suite=presentation degree=3 budget=5"));
    assert!(text.contains("PASS eq2.presentation.confluence"));
}

#[test]
fn failing_check_exits_one_with_witnesses() {
    let out = qhopf(&["--model", "eq2-hyperboloid", "--suite", "actions", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failing: Vec<_> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "fail")
        .collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0]["id"].as_str().unwrap().ends_with("formula.left_n"));
    assert!(!failing[0]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&qhopf(&["--model", "unknown"])), 2);
    assert_eq!(code(&qhopf(&["--model", "su2-sphere", "--degree", "0"])), 2);
    assert_eq!(code(&qhopf(&["--model", "su2-sphere", "--budget", "1"])), 2);
    assert_eq!(code(&qhopf(&["--suite", "hopf"])), 2);
    assert_eq!(code(&qhopf(&["--model", "su2-sphere", "--file", "x.pres"])), 2);
    assert_eq!(code(&qhopf(&["--file", "/nonexistent/x.pres"])), 2);
}

#[test]
fn budget_instability_exits_three() {
    let out = qhopf(&["--model", "su2-sphere", "--suite", "quotient", "--degree", "2", "--budget", "2"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8(out.stdout).unwrap().contains("not stable"));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = ["--model", "su2-sphere", "--suite", "iso", "--seed", "5", "--format", "json"];
    let a = qhopf(&args);
    let b = qhopf(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn presentation_files_are_accepted() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/models/hyperboloid.pres");
    let out = qhopf(&["--file", path, "--suite", "presentation"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().contains("hyperboloid.presentation.confluence"));
}
