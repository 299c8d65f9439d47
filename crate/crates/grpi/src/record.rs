use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// The hypothesis never held, so the implication was not exercised.
    PassVacuous,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn skipped(reason: impl Into<String>) -> Self {
        Status::Skipped(reason.into())
    }

    /// `fail` exactly when the hypothesis held and the conclusion did not.
    pub fn of_implication(hypothesis: bool, conclusion: bool) -> Self {
        if hypothesis && !conclusion {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("pass"),
            Status::PassVacuous => f.write_str("pass-vacuous"),
            Status::Fail => f.write_str("fail"),
            Status::Skipped(reason) => write!(f, "skipped({reason})"),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationRecord {
    pub claim_id: String,
    pub group_name: String,
    pub prime: Option<u64>,
    pub normal_subgroup_fingerprint: String,
    pub hypothesis_held: bool,
    pub conclusion_held: bool,
    pub witness: Option<Value>,
    pub status: Status,
}

impl VerificationRecord {
    pub fn sort_key(&self) -> (&str, &str, Option<u64>, &str) {
        (
            &self.claim_id,
            &self.group_name,
            self.prime,
            &self.normal_subgroup_fingerprint,
        )
    }
}

/// Deterministic report order: claim, group, prime, fingerprint.
pub fn sort_records(records: &mut [VerificationRecord]) {
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

pub fn count_failures(records: &[VerificationRecord]) -> usize {
    records.iter().filter(|r| r.status.is_fail()).count()
}
