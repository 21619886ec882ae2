//! Verification reports.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub lhs: Value,
    pub rhs: Value,
    pub abs_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub notes: String,
}

impl Check {
    /// `|lhs - rhs| < tol`.
    pub fn close(check: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let err = (lhs - rhs).abs();
        Self::new(check, lhs.into(), rhs.into(), err, tol, err < tol)
    }

    /// A check whose error is already a nonnegative number, such as a maximum
    /// over samples; passes when `err < tol`.
    pub fn bound(check: impl Into<String>, err: f64, tol: f64) -> Self {
        Self::new(check, err.into(), 0.0.into(), err, tol, err < tol)
    }

    /// Exact predicate; `abs_err` is the number of violations.
    pub fn exact(check: impl Into<String>, violations: usize, samples: usize) -> Self {
        Self::new(check, (violations as u64).into(), 0u64.into(), violations as f64, 0.0, violations == 0)
            .with_notes(format!("{samples} samples"))
    }

    pub fn new(check: impl Into<String>, lhs: Value, rhs: Value, abs_err: f64, tol: f64, pass: bool) -> Self {
        Self { check: check.into(), lhs, rhs, abs_err, tol, pass, notes: String::new() }
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        let notes = notes.into();
        self.notes = if self.notes.is_empty() { notes } else { format!("{}; {notes}", self.notes) };
        self
    }

    /// A check that could not be evaluated.
    pub fn error(check: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Self::new(check, Value::Null, Value::Null, f64::NAN, 0.0, false).with_notes(format!("error: {err}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
