//! Implication suites for the embedding properties: each property of `H` forces the
//! Π-property of `H` (or of `H ∩ O^p(G)` for the last group of properties).

use grpi_core::{is_power_of, o_upper_p, pi_of, EmbeddingChecker, GroupError, PermGroup, Result};

use crate::record::VerificationRecord;
use crate::tally::{cap_skip, Tally};

pub const GENERAL: [&str; 5] = [
    "normal",
    "permutable",
    "s-permutable",
    "cap",
    "hypercentral",
];
pub const P_SUBGROUP: [&str; 2] = ["s-semipermutable", "ss-quasinormal"];
pub const MEET_O_P: [&str; 4] = ["pi-normal", "c-normal", "uc-normal", "c-sharp-normal"];

/// normal ⇒ permutable ⇒ S-permutable ⇒ S-semipermutable.
pub const CHAIN_ID: &str = "proposition-chain";

pub fn general_id(item: &str) -> String {
    format!("proposition-4.1-{item}")
}

pub fn p_subgroup_id(item: &str) -> String {
    format!("proposition-4.2-{item}")
}

pub fn meet_id(item: &str) -> String {
    format!("proposition-4.3-{item}")
}

/// Every claim id this module can emit.
pub fn claim_ids() -> Vec<String> {
    let mut ids: Vec<String> = GENERAL.iter().map(|s| general_id(s)).collect();
    ids.extend(P_SUBGROUP.iter().map(|s| p_subgroup_id(s)));
    ids.extend(MEET_O_P.iter().map(|s| meet_id(s)));
    ids.push(CHAIN_ID.into());
    ids
}

pub fn verify_propositions_for_group(g: &PermGroup, name: &str) -> Result<Vec<VerificationRecord>> {
    match run(g, name) {
        Err(GroupError::CapExceeded { .. }) => Ok(claim_ids()
            .iter()
            .map(|id| cap_skip(id, name, None))
            .collect()),
        other => other,
    }
}

fn general_property(c: &EmbeddingChecker, item: &str, h: usize) -> Result<bool> {
    Ok(match item {
        "normal" => c.is_normal(h),
        "permutable" => c.is_permutable(h),
        "s-permutable" => c.is_s_permutable(h),
        "cap" => c.is_cap_subgroup(h),
        "hypercentral" => c.is_hypercentral_mod_core(h)?,
        "s-semipermutable" => c.is_s_semipermutable(h),
        "ss-quasinormal" => c.is_ss_quasinormal(h),
        "pi-normal" => c.is_pi_normal(h)?,
        "c-normal" => c.is_c_normal(h),
        "uc-normal" => c.is_uc_normal(h)?,
        "c-sharp-normal" => c.is_c_sharp_normal(h),
        other => unreachable!("unknown property {other}"),
    })
}

fn run(g: &PermGroup, name: &str) -> Result<Vec<VerificationRecord>> {
    let c = EmbeddingChecker::new(g)?;
    let lattice = c.lattice().clone();
    let representatives: Vec<usize> = (0..lattice.len())
        .filter(|&i| lattice.is_class_representative(i))
        .collect();
    let holds = |i: usize| c.pi().holds(lattice.get(i));
    let mut out = Vec::new();

    for item in GENERAL {
        let mut tally = Tally::default();
        for &h in &representatives {
            tally.observe(general_property(&c, item, h)?, || holds(h))?;
        }
        out.push(tally.to_record(&general_id(item), name, None));
    }

    let mut chain = Tally::default();
    for &h in &representatives {
        chain.observe(c.is_normal(h), || Ok::<_, GroupError>(c.is_permutable(h)))?;
        chain.observe(c.is_permutable(h), || {
            Ok::<_, GroupError>(c.is_s_permutable(h))
        })?;
        chain.observe(c.is_s_permutable(h), || {
            Ok::<_, GroupError>(c.is_s_semipermutable(h))
        })?;
    }
    out.push(chain.to_record(CHAIN_ID, name, None));

    for p in pi_of(g.order()).primes() {
        let p_subgroups: Vec<usize> = representatives
            .iter()
            .copied()
            .filter(|&h| is_power_of(lattice.order_of(h), p))
            .collect();
        for item in P_SUBGROUP {
            let mut tally = Tally::default();
            for &h in &p_subgroups {
                tally.observe(general_property(&c, item, h)?, || holds(h))?;
            }
            out.push(tally.to_record(&p_subgroup_id(item), name, Some(p)));
        }
        let op = c.position(&o_upper_p(g, p)?)?;
        for item in MEET_O_P {
            let mut tally = Tally::default();
            for &h in &p_subgroups {
                let meet = lattice.intersection(h, op);
                tally.observe(general_property(&c, item, h)?, || holds(meet))?;
            }
            out.push(tally.to_record(&meet_id(item), name, Some(p)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::Status;
    use grpi_core::families::{alternating, symmetric};

    #[test]
    fn s4_and_a4_have_no_violations() {
        for (g, name) in [
            (symmetric(4).unwrap(), "S4"),
            (alternating(4).unwrap(), "A4"),
        ] {
            let records = verify_propositions_for_group(&g, name).unwrap();
            for r in &records {
                assert!(!r.status.is_fail(), "{r:?}");
            }
            let normal = records
                .iter()
                .find(|r| r.claim_id == "proposition-4.1-normal")
                .unwrap();
            assert_eq!(normal.status, Status::Pass);
            for id in claim_ids() {
                assert!(records.iter().any(|r| r.claim_id == id), "{id}");
            }
        }
    }
}
