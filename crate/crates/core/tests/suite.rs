use std::path::Path;

use qhopf::report::{emit_report, ReportDocument, ReportFormat, Status};
use qhopf::suite::{run_suite, ModelSource, Suite, SuiteConfig, SuiteError};

fn config(model: &str, suite: Suite, degree: u32, budget: u32, seed: u64) -> SuiteConfig {
    SuiteConfig {
        source: ModelSource::Builtin(model.into()),
        suite,
        degree,
        budget,
        seed,
        specializations: 3,
    }
}

#[test]
fn su2_full_suite_passes_with_anchors() {
    let doc = run_suite(&config("su2-sphere", Suite::All, 3, 5, 42)).unwrap();
    let failed: Vec<_> = doc.reports.iter().filter(|r| !r.passed()).map(|r| &r.id).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert!((35..=60).contains(&doc.reports.len()), "{} reports", doc.reports.len());
    assert!(doc.reports.iter().all(|r| !r.anchor.is_empty()));
    let ids: Vec<_> = doc.reports.iter().map(|r| r.id.clone()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn eq2_actions_suite_isolates_the_left_n_formula() {
    let doc = run_suite(&config("eq2-hyperboloid", Suite::Actions, 4, 6, 7)).unwrap();
    for r in &doc.reports {
        if r.id.ends_with("actions.formula.left_n") {
            assert_eq!(r.status, Status::Fail);
            // p = 0 agrees, every p ≠ 0 instance for both signs does not.
            assert_eq!(r.witnesses.len(), 16);
        } else {
            assert!(r.passed(), "{}", r.id);
        }
    }
    assert!(!doc.all_passed());
}

#[test]
fn unknown_model_is_an_input_error() {
    let err = run_suite(&config("unknown", Suite::All, 3, 5, 1)).unwrap_err();
    assert!(matches!(err, SuiteError::Model(_)));
    assert!(err.to_string().contains("su2-sphere"));
}

#[test]
fn degree_zero_and_low_budget_are_rejected() {
    assert!(matches!(run_suite(&config("su2-sphere", Suite::Hopf, 0, 2, 1)), Err(SuiteError::Degree)));
    assert!(matches!(
        run_suite(&config("su2-sphere", Suite::Hopf, 3, 2, 1)),
        Err(SuiteError::Budget { .. })
    ));
}

#[test]
fn presentation_files_run_the_structural_suites_only() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("models/eq2.pres");
    let mut c = config("", Suite::All, 3, 5, 1);
    c.source = ModelSource::File(path);
    let doc = run_suite(&c).unwrap();
    assert!(doc.all_passed());
    let hopf = doc.reports.iter().filter(|r| r.id.contains(".hopf.")).count();
    assert!(hopf >= 5);
    let skipped = doc.reports.iter().filter(|r| r.status == Status::Skipped).count();
    assert_eq!(skipped, 5);
}

#[test]
fn machine_readable_reports_are_deterministic() {
    let c = config("eq2-hyperboloid", Suite::Quotient, 3, 5, 11);
    let a = emit_report(&run_suite(&c).unwrap(), ReportFormat::Json);
    let b = emit_report(&run_suite(&c).unwrap(), ReportFormat::Json);
    assert_eq!(a, b);
    let mut other = c.clone();
    other.seed = 12;
    let d = emit_report(&run_suite(&other).unwrap(), ReportFormat::Json);
    assert_ne!(a, d);
}

#[test]
fn empty_document_serializes() {
    let doc = ReportDocument::new("none", "all", 3, 5, 1, 3, Vec::new());
    let json: serde_json::Value = serde_json::from_str(&emit_report(&doc, ReportFormat::Json)).unwrap();
    assert_eq!(json["reports"].as_array().unwrap().len(), 0);
    assert!(json["schema"].as_str().unwrap().starts_with("qhopf-report/"));
    assert!(emit_report(&doc, ReportFormat::Text).contains("0 checks"));
}
