//! Pass/fail reports for the relation-verification suites.

use serde::Serialize;

/// Outcome of one checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One verified relation, with a counterexample witness on failure.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl RelationCheck {
    pub fn pass(relation: impl Into<String>) -> Self {
        RelationCheck {
            relation: relation.into(),
            status: CheckStatus::Pass,
            witness: None,
        }
    }

    pub fn fail(relation: impl Into<String>, witness: impl Into<String>) -> Self {
        RelationCheck {
            relation: relation.into(),
            status: CheckStatus::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// A batch of relation checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: RelationCheck) {
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn merge(&mut self, other: RelationReport) {
        self.checks.extend(other.checks);
    }
}
