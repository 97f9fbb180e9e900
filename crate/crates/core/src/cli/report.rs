//! Run reports and their text and JSON renderings.

use serde::Serialize;
use serde_json::Value;

use super::file::AlgebraFile;
use crate::identities::CheckReport;
use crate::math::Field;
use crate::order::{LemmaReport, Outcome, Role};
use crate::structure::{Simplicity, SimplicityVerdict, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub flags: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubspaceSummary {
    pub algebra: String,
    pub ambient_dim: usize,
    pub dim: usize,
    pub basis: Vec<String>,
}

impl SubspaceSummary {
    pub fn new<F: Field>(s: &Subspace<F>) -> Self {
        SubspaceSummary {
            algebra: s.algebra().name().to_string(),
            ambient_dim: s.algebra().dim(),
            dim: s.dim(),
            basis: s.basis().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureSummary {
    pub generator: String,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicitySummary {
    pub algebra: String,
    pub verdict: Simplicity,
    pub graded: bool,
    pub ambient_dim: usize,
    pub generators_tested: Vec<String>,
    pub witness: Option<ClosureSummary>,
}

impl SimplicitySummary {
    pub fn new<F: Field>(algebra: &str, v: &SimplicityVerdict<F>) -> Self {
        SimplicitySummary {
            algebra: algebra.to_string(),
            verdict: v.verdict,
            graded: v.graded,
            ambient_dim: v.ambient_dim,
            generators_tested: v.generators_tested.clone(),
            witness: v.witness.as_ref().map(|w| ClosureSummary {
                generator: w.generator.clone(),
                dim: w.closure.dim(),
                basis: w.closure.basis().iter().map(ToString::to_string).collect(),
            }),
        }
    }
}

/// One requested check.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CheckResult {
    Catalog { entries: Vec<CatalogEntry> },
    Algebra { file: AlgebraFile },
    Identity(CheckReport),
    Center(SubspaceSummary),
    EvenCenter(SubspaceSummary),
    Unit { algebra: String, unit: Option<String> },
    Simplicity(SimplicitySummary),
    Lemma {
        #[serde(skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        case: Option<u8>,
        report: LemmaReport,
    },
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        match self {
            CheckResult::Catalog { .. }
            | CheckResult::Algebra { .. }
            | CheckResult::Center(_)
            | CheckResult::EvenCenter(_) => true,
            CheckResult::Identity(r) => r.holds(),
            CheckResult::Unit { unit, .. } => unit.is_some(),
            CheckResult::Simplicity(s) => s.verdict == Simplicity::Simple,
            CheckResult::Lemma { report, .. } => report.passed(),
        }
    }

    fn text_lines(&self, out: &mut Vec<String>) {
        let mark = if self.passed() { "PASS" } else { "FAIL" };
        match self {
            CheckResult::Catalog { entries } => {
                for e in entries {
                    out.push(format!("{}: {}; flags: {}", e.name, e.description, e.flags));
                }
            }
            CheckResult::Algebra { file } => {
                out.push(format!(
                    "algebra {}: dim {}, parity [{}], {} nonzero products",
                    file.name,
                    file.dim,
                    file.parity.iter().map(u8::to_string).collect::<Vec<_>>().join(","),
                    file.products.iter().map(|p| p.terms.len()).sum::<usize>()
                ));
            }
            CheckResult::Identity(r) => {
                let mut line = format!(
                    "{mark} identity {} on {}: {} ({}, {} tuples, {} failures",
                    r.identity,
                    r.algebra,
                    if r.holds() { "holds" } else { "fails" },
                    match r.method {
                        crate::identities::Method::Exhaustive => "exhaustive",
                        crate::identities::Method::Randomized => "randomized",
                    },
                    r.tuples_checked,
                    r.failures
                );
                if let Some(p) = r.prime {
                    line.push_str(&format!(", p = {p}"));
                }
                line.push(')');
                if let Some(w) = &r.witness {
                    if let Some(c) = &w.condition {
                        line.push_str(&format!("; condition {c}"));
                    }
                    if !w.labels.is_empty() {
                        line.push_str(&format!("; witness ({})", w.labels.join(", ")));
                    }
                    if let Some(t) = w.trial {
                        line.push_str(&format!("; witness trial {t}"));
                    }
                    line.push_str(&format!("; defect {}", w.defect));
                }
                out.push(line);
            }
            CheckResult::Center(s) | CheckResult::EvenCenter(s) => {
                let what = if matches!(self, CheckResult::Center(_)) {
                    "center"
                } else {
                    "even center"
                };
                out.push(format!(
                    "{what} of {}: dim {} of {}; basis [{}]",
                    s.algebra,
                    s.dim,
                    s.ambient_dim,
                    s.basis.join("; ")
                ));
            }
            CheckResult::Unit { algebra, unit } => match unit {
                Some(u) => out.push(format!("{mark} unit of {algebra}: {u}")),
                None => out.push(format!("{mark} unit of {algebra}: none")),
            },
            CheckResult::Simplicity(s) => {
                let mut line = format!(
                    "{mark} {} is {}{} ({} generators tested",
                    s.algebra,
                    if s.verdict == Simplicity::Simple {
                        "simple"
                    } else {
                        "not simple"
                    },
                    if s.graded { " as a graded algebra" } else { "" },
                    s.generators_tested.len()
                );
                line.push(')');
                if let Some(w) = &s.witness {
                    line.push_str(&format!(
                        "; ideal generated by {} has dim {} of {}, basis [{}]",
                        w.generator,
                        w.dim,
                        s.ambient_dim,
                        w.basis.join("; ")
                    ));
                }
                out.push(line);
            }
            CheckResult::Lemma { n, case, report } => {
                let mut head = format!("{mark} lemma {}", report.lemma);
                if let Some(n) = n {
                    head.push_str(&format!(" n={n}"));
                }
                if let Some(c) = case {
                    head.push_str(&format!(" case {c}"));
                }
                head.push_str(&format!(" on {}", report.algebra));
                if !report.conventions.is_empty() {
                    head.push_str(&format!("; conventions: {}", report.conventions.join(", ")));
                }
                if let Some(c) = report.corrected_verdict {
                    head.push_str(&format!("; corrected: {}", outcome(c)));
                }
                out.push(head);
                for r in &report.records {
                    let mut line = format!(
                        "  {} [{}] {}: {} = {}; expected {}",
                        if r.matches { "pass" } else { "fail" },
                        role_name(r.role),
                        r.label,
                        r.display,
                        r.value,
                        r.expected
                    );
                    if let Some(c) = &r.convention {
                        line.push_str(&format!("; {c}"));
                    }
                    if r.sign_mismatch {
                        line.push_str("; sign mismatch");
                    }
                    if r.shadow_failures > 0 {
                        line.push_str(&format!("; {} shadow failures", r.shadow_failures));
                    }
                    out.push(line);
                }
                for note in &report.notes {
                    out.push(format!("  note: {note}"));
                }
            }
        }
    }
}

fn role_name(r: Role) -> &'static str {
    match r {
        Role::Published => "published",
        Role::Derived => "derived",
        Role::Corrected => "corrected",
        Role::Observation => "observation",
    }
}

fn outcome(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub version: String,
    pub command: Vec<String>,
    pub results: Vec<CheckResult>,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            results: vec![],
            status: Status::Pass,
            exit_code: 0,
            error: None,
        }
    }

    pub fn finish(&mut self) {
        let ok = self.results.iter().all(CheckResult::passed);
        self.status = if ok { Status::Pass } else { Status::Fail };
        self.exit_code = if ok { 0 } else { 1 };
    }

    pub fn fail_with(&mut self, msg: String) {
        self.results.clear();
        self.status = Status::Error;
        self.exit_code = 2;
        self.error = Some(msg);
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let v: Value = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }

    /// One line per check, then the status. Errors go to standard error.
    pub fn to_text(&self) -> String {
        let mut lines = Vec::new();
        for r in &self.results {
            r.text_lines(&mut lines);
        }
        lines.push(format!(
            "status: {} (exit {})",
            match self.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Error => "error",
            },
            self.exit_code
        ));
        let mut s = lines.join("\n");
        s.push('\n');
        s
    }
}
