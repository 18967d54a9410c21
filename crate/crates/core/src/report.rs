//! Machine-readable pass/fail records for the verifier suites.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::time::Instant;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseResult {
    pub key: String,
    pub inputs: Value,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub counterexamples: Vec<Value>,
    pub wall_time_ms: u128,
    pub passed: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn summary(&self) -> String {
        let ok = self.cases.iter().filter(|c| c.pass).count();
        format!(
            "{}: {}/{} cases pass{} ({} ms)",
            self.suite,
            ok,
            self.cases.len(),
            if self.counterexamples.is_empty() {
                String::new()
            } else {
                format!(", {} counterexamples", self.counterexamples.len())
            },
            self.wall_time_ms
        )
    }
}

/// Collects cases for one suite. A case passes iff expected equals actual
/// exactly; all checks in this crate are discrete, so no tolerances exist.
pub struct ReportBuilder {
    suite: String,
    cases: Vec<CaseResult>,
    counterexamples: Vec<Value>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(suite: impl Into<String>) -> Self {
        ReportBuilder {
            suite: suite.into(),
            cases: Vec::new(),
            counterexamples: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn case(&mut self, key: impl Into<String>, inputs: Value, expected: Value, actual: Value) {
        let key = key.into();
        let pass = expected == actual;
        if !pass {
            self.counterexamples.push(json!({
                "case": key,
                "inputs": inputs,
                "expected": expected,
                "actual": actual,
            }));
        }
        self.cases.push(CaseResult {
            key,
            inputs,
            expected,
            actual,
            pass,
        });
    }

    /// Convenience for boolean checks.
    pub fn check(&mut self, key: impl Into<String>, inputs: Value, ok: bool) {
        self.case(key, inputs, json!(true), json!(ok));
    }

    /// Record an error as a failing case.
    pub fn error(&mut self, key: impl Into<String>, inputs: Value, err: &crate::error::Error) {
        self.case(key, inputs, json!("ok"), json!(format!("error: {err}")));
    }

    pub fn finish(self) -> VerificationReport {
        let passed = self.cases.iter().all(|c| c.pass);
        VerificationReport {
            suite: self.suite,
            cases: self.cases,
            counterexamples: self.counterexamples,
            wall_time_ms: self.started.elapsed().as_millis(),
            passed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_match_semantics() {
        let mut b = ReportBuilder::new("demo");
        b.case("a", json!(null), json!(3), json!(3));
        b.case("b", json!({"n": 2}), json!([1, 2]), json!([1, 3]));
        let r = b.finish();
        assert!(!r.passed());
        assert!(r.cases[0].pass);
        assert!(!r.cases[1].pass);
        assert_eq!(r.counterexamples.len(), 1);
    }
}
