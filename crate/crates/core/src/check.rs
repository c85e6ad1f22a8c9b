//! Uniform result type for every axiom checker in the crate.
//!
//! A [`CheckResult`] names the property it checked (`"GC2"`, `"D1"`,
//! `"adjunction"`, ...), whether it held, the first violating tuple in
//! canonical enumeration order, and a short human-readable trace.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub label: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub trace: String,
}

impl CheckResult {
    pub fn pass(label: impl Into<String>) -> Self {
        CheckResult {
            label: label.into(),
            passed: true,
            witness: Vec::new(),
            trace: String::new(),
        }
    }

    pub fn fail(label: impl Into<String>, witness: Vec<String>, trace: impl Into<String>) -> Self {
        CheckResult {
            label: label.into(),
            passed: false,
            witness,
            trace: trace.into(),
        }
    }

    pub fn from_bool(label: impl Into<String>, ok: bool, trace: impl Into<String>) -> Self {
        if ok {
            CheckResult::pass(label)
        } else {
            CheckResult::fail(label, Vec::new(), trace)
        }
    }

    pub fn with_trace(mut self, trace: impl Into<String>) -> Self {
        self.trace = trace.into();
        self
    }

    /// Combines several checks into one; the first failure wins.
    pub fn all(label: impl Into<String>, parts: impl IntoIterator<Item = CheckResult>) -> Self {
        let label = label.into();
        for part in parts {
            if !part.passed {
                let trace = if part.trace.is_empty() {
                    format!("{} failed", part.label)
                } else {
                    format!("{}: {}", part.label, part.trace)
                };
                return CheckResult::fail(label, part.witness, trace);
            }
        }
        CheckResult::pass(label)
    }

    pub fn is_pass(&self) -> bool {
        self.passed
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<28} {}", self.label, if self.passed { "pass" } else { "FAIL" })?;
        if !self.witness.is_empty() {
            write!(f, "  witness=({})", self.witness.join(", "))?;
        }
        if !self.trace.is_empty() {
            write!(f, "  {}", self.trace)?;
        }
        Ok(())
    }
}

/// An ordered list of named checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, label: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.label == label)
    }

    pub fn summary(&self, label: impl Into<String>) -> CheckResult {
        CheckResult::all(label, self.checks.iter().cloned())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromIterator<CheckResult> for Report {
    fn from_iter<I: IntoIterator<Item = CheckResult>>(iter: I) -> Self {
        Report {
            checks: iter.into_iter().collect(),
        }
    }
}
