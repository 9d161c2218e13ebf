//! Verification reports and their text / JSON serializations.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

/// Schema identifier written into every machine-readable document.
pub const REPORT_SCHEMA: &str = "qhopf-report/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u32>,
    pub specializations: Vec<String>,
}

/// Rendered evidence for a failed identity: what was checked and both
/// sides as computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub lhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl Witness {
    pub fn new(label: impl Into<String>, lhs: impl Into<String>) -> Self {
        Witness {
            label: label.into(),
            lhs: lhs.into(),
            rhs: None,
        }
    }

    pub fn sides(label: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Witness {
            label: label.into(),
            lhs: lhs.into(),
            rhs: Some(rhs.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub summary: String,
    pub params: ReportParams,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub budget_instability: bool,
    /// Wall-clock time; kept out of the JSON so documents are reproducible.
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl VerificationReport {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        VerificationReport {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            summary: String::new(),
            params: ReportParams::default(),
            witnesses: Vec::new(),
            budget_instability: false,
            elapsed: None,
        }
    }

    pub fn with_degree(mut self, d: u32) -> Self {
        self.params.degree = Some(d);
        self
    }

    pub fn with_budget(mut self, b: u32) -> Self {
        self.params.budget = Some(b);
        self
    }

    pub fn with_specializations(mut self, specs: Vec<String>) -> Self {
        self.params.specializations = specs;
        self
    }

    /// Sets the final status from a list of witnesses: pass when empty.
    pub fn conclude(mut self, summary: impl Into<String>, witnesses: Vec<Witness>) -> Self {
        self.summary = summary.into();
        self.status = if witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        self.witnesses = witnesses;
        self
    }

    pub fn pass(self, summary: impl Into<String>) -> Self {
        self.conclude(summary, Vec::new())
    }

    pub fn fail(self, summary: impl Into<String>, witness: Witness) -> Self {
        self.conclude(summary, vec![witness])
    }

    pub fn skip(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Skipped;
        self.summary = reason.into();
        self
    }

    pub fn budget_failure(mut self, message: impl Into<String>) -> Self {
        let message = message.into();
        self.status = Status::Fail;
        self.budget_instability = true;
        self.witnesses = vec![Witness::new("budget", message.clone())];
        self.summary = message;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub model: String,
    pub suite: String,
    pub degree: u32,
    pub budget: u32,
    pub seed: u64,
    pub specializations: usize,
    pub reports: Vec<VerificationReport>,
}

impl ReportDocument {
    /// Sorts reports by identifier so output order is independent of
    /// execution order.
    pub fn new(
        model: impl Into<String>,
        suite: impl Into<String>,
        degree: u32,
        budget: u32,
        seed: u64,
        specializations: usize,
        mut reports: Vec<VerificationReport>,
    ) -> Self {
        reports.sort_by(|a, b| a.id.cmp(&b.id));
        ReportDocument {
            schema: REPORT_SCHEMA.into(),
            model: model.into(),
            suite: suite.into(),
            degree,
            budget,
            seed,
            specializations,
            reports,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.status != Status::Fail)
    }

    pub fn any_budget_instability(&self) -> bool {
        self.reports.iter().any(|r| r.budget_instability)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

pub fn emit_report(doc: &ReportDocument, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("report serialization");
            s.push('\n');
            s
        }
        ReportFormat::Text => render_text(doc),
    }
}

fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} suite={} degree={} budget={} seed={} specializations={}",
        doc.model, doc.suite, doc.degree, doc.budget, doc.seed, doc.specializations
    );
    for r in &doc.reports {
        let _ = writeln!(out, "{} {} [{}] {}", r.status.label(), r.id, r.anchor, r.summary);
        for w in &r.witnesses {
            match &w.rhs {
                Some(rhs) => {
                    let _ = writeln!(out, "    {}: lhs = {}", w.label, w.lhs);
                    let _ = writeln!(out, "    {}: rhs = {}", w.label, rhs);
                }
                None => {
                    let _ = writeln!(out, "    {}: {}", w.label, w.lhs);
                }
            }
        }
    }
    let passed = doc.reports.iter().filter(|r| r.passed()).count();
    let failed = doc.reports.iter().filter(|r| r.status == Status::Fail).count();
    let _ = writeln!(out, "# {} checks: {} passed, {} failed", doc.reports.len(), passed, failed);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_valid_json() {
        let doc = ReportDocument::new("none", "all", 3, 5, 1, 3, vec![]);
        let json = emit_report(&doc, ReportFormat::Json);
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        assert!(back.reports.is_empty());
        assert_eq!(back.schema, REPORT_SCHEMA);
    }

    #[test]
    fn failing_check_carries_witness_block() {
        let r = VerificationReport::new("x.y", "anchor").fail(
            "broken",
            Witness::sides("word beta", "q^-1*beta", "-q^-1*beta"),
        );
        let doc = ReportDocument::new("m", "all", 3, 5, 1, 3, vec![r]);
        let text = emit_report(&doc, ReportFormat::Text);
        assert!(text.contains("FAIL x.y [anchor] broken"));
        assert!(text.contains("word beta: lhs = q^-1*beta"));
        let json = emit_report(&doc, ReportFormat::Json);
        assert!(json.contains("\"witnesses\""));
        assert!(!doc.all_passed());
    }

    #[test]
    fn reports_are_sorted_by_id() {
        let a = VerificationReport::new("b", "x").pass("ok");
        let b = VerificationReport::new("a", "x").pass("ok");
        let doc = ReportDocument::new("m", "all", 3, 5, 1, 3, vec![a, b]);
        assert_eq!(doc.reports[0].id, "a");
    }
}
