//! Structured pass/fail records for identity checks.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one identity check. `identity` names the check and, where it
/// applies, the type (`"theorem6:BC"`); `maxdeg` holds the degree or index
/// bound the check ran at.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub n: usize,
    pub maxdeg: u32,
    pub status: Status,
    pub counterexample: Option<Value>,
}

impl VerificationReport {
    pub fn new(
        identity: impl Into<String>,
        n: usize,
        maxdeg: u32,
        counterexample: Option<Value>,
    ) -> Self {
        let status = if counterexample.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        VerificationReport {
            identity: identity.into(),
            n,
            maxdeg,
            status,
            counterexample,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
