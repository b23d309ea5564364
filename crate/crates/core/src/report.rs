use serde_json::{json, Value};

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub relation: String,
    pub passed: bool,
    pub counterexample: Option<String>,
}

/// Outcome of a suite: checks plus free-form findings.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    /// Report-only suites never fail the run.
    pub advisory: bool,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Report {
        Report { name: name.into(), ..Default::default() }
    }

    /// Records one relation; only the first counterexample is kept.
    pub fn record(&mut self, relation: &str, ok: bool, witness: impl FnOnce() -> String) {
        if let Some(c) = self.checks.iter_mut().find(|c| c.relation == relation) {
            if !ok && c.passed {
                c.passed = false;
                c.counterexample = Some(witness());
            }
            return;
        }
        self.checks.push(Check {
            relation: relation.to_string(),
            passed: ok,
            counterexample: if ok { None } else { Some(witness()) },
        });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.advisory || self.checks.iter().all(|c| c.passed)
    }

    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            let w = c.counterexample.clone().unwrap_or_default();
            self.record(&c.relation, c.passed, || w);
        }
        self.notes.extend(other.notes);
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = json!({"relation": c.relation, "status": if c.passed { "pass" } else { "fail" }});
                if let Some(w) = &c.counterexample {
                    v["counterexample"] = json!(w);
                }
                v
            })
            .collect();
        let mut v = json!({"suite": self.name, "checks": checks});
        if !self.notes.is_empty() {
            v["notes"] = json!(self.notes);
        }
        if self.advisory {
            v["advisory"] = json!(true);
        }
        v
    }
}
