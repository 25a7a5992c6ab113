//! Structured verification reports.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Selects the faithful identity or its designated mutation. Every suite
/// ships a mutation so a checker that always says "equal" is caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Variant {
    #[default]
    Faithful,
    Mutated,
}

impl Variant {
    pub fn is_mutated(self) -> bool {
        self == Variant::Mutated
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub identity: String,
    /// Formula the check establishes, in LaTeX.
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<i64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Wall time; left out of JSON so reports are byte-stable.
    #[serde(skip)]
    pub millis: f64,
}

impl CheckResult {
    pub fn new(identity: impl Into<String>, anchor: impl Into<String>, passed: bool) -> Self {
        CheckResult {
            identity: identity.into(),
            anchor: anchor.into(),
            index: None,
            passed,
            detail: None,
            millis: 0.0,
        }
    }

    pub fn at(mut self, index: i64) -> Self {
        self.index = Some(index);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.millis = start.elapsed().as_secs_f64() * 1e3;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Index of the first failing check, if it carries one.
    pub fn first_failure_index(&self) -> Option<i64> {
        self.failures().next().and_then(|c| c.index)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let total: f64 = self.checks.iter().map(|c| c.millis).sum();
        let ok = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(
            out,
            "[{}] {} {}/{} checks ({:.1} ms)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            ok,
            self.checks.len(),
            total
        );
        for c in &self.checks {
            let idx = c.index.map(|i| format!(" @{i}")).unwrap_or_default();
            let _ = write!(
                out,
                "  {} {}{}  {}  ({:.1} ms)",
                if c.passed { "ok  " } else { "FAIL" },
                c.identity,
                idx,
                c.anchor,
                c.millis
            );
            if let Some(d) = &c.detail {
                let _ = write!(out, "  [{d}]");
            }
            out.push('\n');
        }
        out
    }
}

/// Reports from several suites, in selection order.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ReportSet {
    pub reports: Vec<Report>,
}

impl ReportSet {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_human(&self) -> String {
        self.reports.iter().map(Report::to_human).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_does_not_pass() {
        assert!(!Report::new("x").passed());
    }

    #[test]
    fn json_has_no_timing() {
        let mut r = Report::new("s");
        let mut c = CheckResult::new("id", "a=b", true).at(3);
        c.millis = 12.5;
        r.push(c);
        let j = r.to_json();
        assert!(!j.contains("millis"));
        let back: Report = serde_json::from_str(&j).unwrap();
        assert_eq!(back.checks[0].index, Some(3));
        assert!(r.to_human().contains("PASS"));
    }
}
