//! Named pass/fail lists produced by the verifiers.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    /// Human-readable evidence; empty when there is nothing to add.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub checks: Vec<NamedCheck>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport {
            passed: true,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(NamedCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, true, "");
    }

    pub fn extend(&mut self, other: CheckReport) {
        for c in other.checks {
            self.push(c.name, c.passed, c.detail);
        }
    }

    /// Names of the checks that failed, in order.
    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&NamedCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}
