//! Verification reports shared by the sweep operations and the CLI.

use serde::Serialize;

/// Outcome of one verified claim over a finite index range.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub claim: String,
    pub range: String,
    pub holds: bool,
    /// Witness of the first violation, when one exists.
    pub first_violation: Option<String>,
}

impl CheckReport {
    pub fn pass(claim: impl Into<String>, range: impl Into<String>) -> Self {
        CheckReport {
            claim: claim.into(),
            range: range.into(),
            holds: true,
            first_violation: None,
        }
    }

    pub fn fail(
        claim: impl Into<String>,
        range: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        CheckReport {
            claim: claim.into(),
            range: range.into(),
            holds: false,
            first_violation: Some(witness.into()),
        }
    }
}

/// True when every report in the slice holds.
pub fn all_hold(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.holds)
}
