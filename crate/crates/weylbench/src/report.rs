//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

/// Verdict for one operator relation.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RelationReport {
    pub relation: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl RelationReport {
    pub fn equal(relation: impl Into<String>) -> Self {
        RelationReport {
            relation: relation.into(),
            verdict: "equal".into(),
            witness: None,
        }
    }

    pub fn unequal(relation: impl Into<String>, witness: impl Into<String>) -> Self {
        RelationReport {
            relation: relation.into(),
            verdict: "unequal".into(),
            witness: Some(witness.into()),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == "equal"
    }
}

/// One verification case with both sides in normal form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VerifyCase {
    pub case: String,
    pub relation: String,
    pub status: String,
    pub lhs_normal_form: String,
    pub rhs_normal_form: String,
}

impl VerifyCase {
    pub fn new(
        case: impl Into<String>,
        relation: impl Into<String>,
        ok: bool,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        VerifyCase {
            case: case.into(),
            relation: relation.into(),
            status: if ok { "verified".into() } else { "mismatch".into() },
            lhs_normal_form: lhs.into(),
            rhs_normal_form: rhs.into(),
        }
    }

    pub fn ok(&self) -> bool {
        self.status == "verified"
    }
}
