//! Verification reports with deterministic JSON and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// Failures kept per report; further failures are only counted.
const MAX_RECORDED_FAILURES: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupInfo {
    pub family: String,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub relation: String,
    pub instance: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Count {
    pub instances: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub wall_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub group: GroupInfo,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub failures: Vec<Failure>,
    pub counts: BTreeMap<String, Count>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(check: &str, family: &str, rank: usize) -> Report {
        Report {
            check: check.into(),
            group: GroupInfo { family: family.into(), rank },
            params: BTreeMap::new(),
            status: Status::Pass,
            failures: Vec::new(),
            counts: BTreeMap::new(),
            result: None,
            timing: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Records one instance; `witness` is only evaluated on failure.
    pub fn record(&mut self, relation: &str, instance: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        let c = self.counts.entry(relation.into()).or_default();
        c.instances += 1;
        if !ok {
            c.failed += 1;
            self.status = Status::Fail;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(Failure { relation: relation.into(), instance: instance.into(), witness: witness() });
            }
        }
    }

    /// Records a precomputed outcome.
    pub fn record_outcome(&mut self, relation: &str, outcome: Outcome) {
        self.record(relation, outcome.instance, outcome.witness.is_none(), || outcome.witness.unwrap_or_default());
    }

    /// Folds another report's counts and failures into this one.
    pub fn absorb(&mut self, other: Report) {
        for (k, c) in other.counts {
            let e = self.counts.entry(k).or_default();
            e.instances += c.instances;
            e.failed += c.failed;
        }
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            }
        }
        if other.status == Status::Fail {
            self.status = Status::Fail;
        }
    }

    pub fn fail(&mut self, relation: &str, instance: impl Into<String>, witness: impl Into<String>) {
        let w = witness.into();
        self.record(relation, instance, false, || w);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "check: {}", self.check);
        let _ = writeln!(s, "group: {}({})", self.group.family, self.group.rank);
        for (k, v) in &self.params {
            let _ = writeln!(s, "param {k}: {}", render_value(v));
        }
        let _ = writeln!(s, "status: {}", if self.passed() { "pass" } else { "fail" });
        if !self.counts.is_empty() {
            let width = self.counts.keys().map(String::len).max().unwrap_or(0).max(8);
            let _ = writeln!(s, "{:<width$}  {:>9}  {:>6}", "relation", "instances", "failed");
            for (k, c) in &self.counts {
                let _ = writeln!(s, "{k:<width$}  {:>9}  {:>6}", c.instances, c.failed);
            }
        }
        if let Some(r) = &self.result {
            let _ = writeln!(s, "result: {}", serde_json::to_string(r).unwrap());
        }
        for f in &self.failures {
            let _ = writeln!(s, "FAIL {} [{}]: {}", f.relation, f.instance, f.witness);
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(s, "wall time: {:.3}s", t.wall_seconds);
        }
        s
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Result of checking a single relation instance, computed possibly in parallel.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub instance: String,
    /// `None` on success; otherwise the canonical serialization of the residue.
    pub witness: Option<String>,
}

impl Outcome {
    pub fn pass(instance: impl Into<String>) -> Outcome {
        Outcome { instance: instance.into(), witness: None }
    }

    pub fn fail(instance: impl Into<String>, witness: impl Into<String>) -> Outcome {
        Outcome { instance: instance.into(), witness: Some(witness.into()) }
    }

    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_failing() {
        let mut r = Report::new("demo", "A", 3).param("degree", 2);
        r.record("son", "(1,2,3,4)", true, String::new);
        r.record("son", "(1,2,4,3)", false, || "x1*D2".into());
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.to_json(), r.clone().to_json());
        let text = r.to_text();
        assert!(text.contains("son"));
        assert!(text.contains("FAIL son [(1,2,4,3)]: x1*D2"));
        assert!(r.to_json().contains("\"status\": \"fail\""));
    }
}
