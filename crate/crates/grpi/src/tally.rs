//! Aggregated records for the property suites: one record per (item, group, prime).

use serde_json::json;

use crate::record::{Status, VerificationRecord};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub tuples: u64,
    /// Tuples whose hypothesis held.
    pub admissible: u64,
    pub violations: u64,
}

impl Tally {
    /// Counts one tuple; `conclusion` is only evaluated when `hypothesis` holds.
    pub fn observe<E>(
        &mut self,
        hypothesis: bool,
        conclusion: impl FnOnce() -> Result<bool, E>,
    ) -> Result<(), E> {
        self.tuples += 1;
        if hypothesis {
            self.admissible += 1;
            if !conclusion()? {
                self.violations += 1;
            }
        }
        Ok(())
    }

    pub fn to_record(
        self,
        claim_id: &str,
        group_name: &str,
        prime: Option<u64>,
    ) -> VerificationRecord {
        let status = if self.violations > 0 {
            Status::Fail
        } else if self.admissible == 0 {
            Status::PassVacuous
        } else {
            Status::Pass
        };
        VerificationRecord {
            claim_id: claim_id.into(),
            group_name: group_name.into(),
            prime,
            normal_subgroup_fingerprint: "-".into(),
            hypothesis_held: self.admissible > 0,
            conclusion_held: self.violations == 0,
            witness: Some(json!({
                "tuples": self.tuples,
                "admissible": self.admissible,
                "violations": self.violations,
            })),
            status,
        }
    }
}

pub fn cap_skip(claim_id: &str, group_name: &str, prime: Option<u64>) -> VerificationRecord {
    VerificationRecord {
        claim_id: claim_id.into(),
        group_name: group_name.into(),
        prime,
        normal_subgroup_fingerprint: "-".into(),
        hypothesis_held: false,
        conclusion_held: false,
        witness: None,
        status: Status::skipped("cap"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses() {
        let mut t = Tally::default();
        t.observe::<()>(false, || unreachable!()).unwrap();
        assert_eq!(t.to_record("x", "G", None).status, Status::PassVacuous);
        t.observe::<()>(true, || Ok(true)).unwrap();
        assert_eq!(t.to_record("x", "G", None).status, Status::Pass);
        t.observe::<()>(true, || Ok(false)).unwrap();
        let r = t.to_record("x", "G", None);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness.unwrap()["tuples"], 3);
    }
}
