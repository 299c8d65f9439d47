//! The counterexample `G = C5 × A5` at `p = 5`: `P_i ∩ B` satisfies the Π-property for
//! `P_1 = ⟨a⟩` and `P_2 = ⟨ab⟩`, yet `G` is neither 5-supersoluble nor 5-nilpotent.

use grpi_core::families::{alternating, cyclic, direct_product};
use grpi_core::{
    frattini_of_p_group, generator_rank, intersection, is_p_nilpotent, is_p_supersoluble,
    PermGroup, Permutation, PiChecker, Result, Subgroup,
};
use serde_json::json;

use crate::record::{Status, VerificationRecord};
use crate::theorems::{verify_theorem, Theorem};

pub const CLAIM: &str = "example-1.2";
const P: u64 = 5;

pub struct Example {
    pub group: PermGroup,
    /// The simple factor `A5` on points 5..9.
    pub b: Subgroup,
    pub sylow: Subgroup,
    pub p1: Subgroup,
    pub p2: Subgroup,
}

pub fn example_group() -> Result<Example> {
    let group = direct_product(&cyclic(5)?, &alternating(5)?)?;
    let perm = |text: &str| Permutation::parse_cycles(10, text);
    let a = perm("(0 1 2 3 4)")?;
    let b = perm("(5 6 7 8 9)")?;
    let ab = a.compose(&b)?;
    let simple = Subgroup::generated(&group, vec![perm("(5 6 7)")?, perm("(7 8 9)")?])?;
    Ok(Example {
        sylow: Subgroup::generated(&group, vec![a.clone(), b])?,
        p1: Subgroup::generated(&group, vec![a])?,
        p2: Subgroup::generated(&group, vec![ab])?,
        b: simple,
        group,
    })
}

/// `{P_1, P_2}` is an M_d family of `P`: each has index `p`, there are `d` of them and
/// they meet in `Φ(P)`.
fn is_valid_family(ex: &Example) -> Result<bool> {
    let pg = ex.sylow.group();
    let d = generator_rank(pg, P)?;
    let phi = frattini_of_p_group(pg, P)?;
    let meet = intersection(&ex.p1, &ex.p2)?;
    Ok(d == 2
        && ex.sylow.order() == 25
        && [&ex.p1, &ex.p2]
            .iter()
            .all(|m| m.is_contained_in(&ex.sylow) && ex.sylow.order() / m.order() == P as u128)
        && meet.order() == phi.order())
}

pub fn reproduce_example_1_2() -> Result<VerificationRecord> {
    let ex = example_group()?;
    let checker = PiChecker::new(&ex.group)?;
    let i1 = intersection(&ex.p1, &ex.b)?;
    let i2 = intersection(&ex.p2, &ex.b)?;
    let pi1 = checker.holds(&i1)?;
    let pi2 = checker.holds(&i2)?;
    let family = is_valid_family(&ex)?;
    let supersoluble = is_p_supersoluble(&ex.group, P)?;
    let nilpotent = is_p_nilpotent(&ex.group, P)?;

    let statuses = Theorem::ALL
        .iter()
        .map(|&t| {
            let records = verify_theorem(t, &ex.group, "C5xA5", P)?;
            let mut statuses: Vec<String> = records
                .iter()
                .filter(|r| r.claim_id == t.claim_id())
                .map(|r| r.status.to_string())
                .collect();
            statuses.sort();
            statuses.dedup();
            Ok((t.claim_id().to_string(), json!(statuses)))
        })
        .collect::<Result<serde_json::Map<_, _>>>()?;

    let hypothesis = pi1 && pi2 && family;
    let conclusion = !supersoluble && !nilpotent;
    Ok(VerificationRecord {
        claim_id: CLAIM.into(),
        group_name: "C5xA5".into(),
        prime: Some(P),
        normal_subgroup_fingerprint: ex.b.key()?.to_string(),
        hypothesis_held: hypothesis,
        conclusion_held: conclusion,
        witness: Some(json!({
            "p1_meet_b_order": i1.order() as u64,
            "p2_meet_b_order": i2.order() as u64,
            "p1_meet_b_pi": pi1,
            "p2_meet_b_pi": pi2,
            "valid_family": family,
            "p_supersoluble": supersoluble,
            "p_nilpotent": nilpotent,
            "theorem_statuses": statuses,
        })),
        status: if hypothesis && conclusion {
            Status::Pass
        } else {
            Status::Fail
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_four_assertions_hold() {
        let r = reproduce_example_1_2().unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        let w = r.witness.unwrap();
        assert_eq!(w["p1_meet_b_order"], 1);
        assert_eq!(w["p2_meet_b_order"], 1);
        assert_eq!(
            w["theorem_statuses"]["theorem-a"],
            json!(["skipped(not-p-soluble)"])
        );
        assert_eq!(w["theorem_statuses"]["theorem-c"], json!(["skipped(gcd)"]));
    }
}
