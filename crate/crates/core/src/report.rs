//! Pass/fail reports produced by the axiom and theorem checkers.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// No counterexample found, but only a random sample was inspected.
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub results: Vec<AxiomResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, axiom: impl Into<String>, status: Status, counterexample: Option<String>) {
        self.results.push(AxiomResult { axiom: axiom.into(), status, counterexample });
    }

    /// Records the outcome of a search for a counterexample.
    pub fn record(&mut self, axiom: impl Into<String>, exhaustive: bool, witness: Option<String>) {
        let status = match (&witness, exhaustive) {
            (Some(_), _) => Status::Fail,
            (None, true) => Status::Pass,
            (None, false) => Status::Sampled,
        };
        self.push(axiom, status, witness);
    }

    pub fn extend(&mut self, other: Report) {
        self.results.extend(other.results);
    }

    /// Prefixes every axiom name, e.g. with the framework it was run on.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for r in &mut self.results {
            r.axiom = format!("{prefix}: {}", r.axiom);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn find(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Sampled => "sampled",
            };
            write!(f, "{status:>7}  {}", r.axiom)?;
            if let Some(c) = &r.counterexample {
                write!(f, "\n         counterexample: {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_and_json() {
        let mut r = Report::new();
        r.record("a", true, None);
        r.record("b", false, None);
        assert!(r.passed());
        r.record("c", true, Some("x".into()));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        let json = r.to_json();
        assert_eq!(json[0]["status"], "pass");
        assert_eq!(json[1]["status"], "sampled");
        assert_eq!(json[2]["counterexample"], "x");
        assert!(json[0].get("counterexample").is_none());
    }
}
