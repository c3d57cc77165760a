//! Named numeric checks and the reports that collect them.

use serde::{Deserialize, Serialize};

use crate::model::ModelParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes iff `error < tolerance` (and `error` is finite).
    pub fn within(id: impl Into<String>, error: f64, tolerance: f64) -> Self {
        let status = if error.is_finite() && error < tolerance { Status::Pass } else { Status::Fail };
        Check { id: id.into(), max_abs_error: error, tolerance, status, note: None }
    }

    /// A yes/no property; recorded with error 0 or 1 and tolerance 0.5.
    pub fn holds(id: impl Into<String>, ok: bool) -> Self {
        Check::within(id, if ok { 0.0 } else { 1.0 }, 0.5)
    }

    pub fn not_applicable(id: impl Into<String>, note: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            max_abs_error: 0.0,
            tolerance: 0.0,
            status: Status::NotApplicable,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: ModelParams,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, params: ModelParams, seed: u64) -> Self {
        VerificationReport { suite: suite.into(), params, seed, checks: Vec::new(), wall_time_ms: 0.0 }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// True iff every applicable check passes.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn not_applicable_never_fails_a_report() {
        let p = ModelParams::new(1, 3).unwrap();
        let mut r = VerificationReport::new("demo", p, 1);
        r.push(Check::within("a", 1e-13, 1e-12));
        r.push(Check::not_applicable("b", "vacuous"));
        assert!(r.passed());
        r.push(Check::within("c", f64::NAN, 1.0));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn status_serializes_as_words() {
        let c = Check::not_applicable("x", "y");
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains(r#""status":"n/a""#));
        assert!(serde_json::to_string(&Check::holds("h", true)).unwrap().contains(r#""pass""#));
    }
}
