//! Both directions of the three criteria, one record per admissible normal subgroup.
//!
//! Sufficiency records (`theorem-a`, ...) take the hypothesis to be "some family passes"
//! and the conclusion to be p-supersolubility or p-nilpotency of `G`. Necessity records
//! (`theorem-a-necessity`, ...) swap the roles and ask for every family to pass.

use grpi_core::{
    is_p_nilpotent, is_p_soluble, is_p_supersoluble, normal_lattice, normalizer,
    quotient_is_p_nilpotent, quotient_is_p_supersoluble, GroupError, PermGroup, PiChecker, Result,
    Subgroup, SylowFamilies,
};
use serde_json::{json, Value};

use crate::record::{Status, VerificationRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    A,
    B,
    C,
}

impl Theorem {
    pub const ALL: [Theorem; 3] = [Theorem::A, Theorem::B, Theorem::C];

    pub fn claim_id(self) -> &'static str {
        match self {
            Theorem::A => "theorem-a",
            Theorem::B => "theorem-b",
            Theorem::C => "theorem-c",
        }
    }

    pub fn necessity_id(self) -> String {
        format!("{}-necessity", self.claim_id())
    }
}

pub fn verify_theorem_a(g: &PermGroup, name: &str, p: u64) -> Result<Vec<VerificationRecord>> {
    verify_theorem(Theorem::A, g, name, p)
}

pub fn verify_theorem_b(g: &PermGroup, name: &str, p: u64) -> Result<Vec<VerificationRecord>> {
    verify_theorem(Theorem::B, g, name, p)
}

pub fn verify_theorem_c(g: &PermGroup, name: &str, p: u64) -> Result<Vec<VerificationRecord>> {
    verify_theorem(Theorem::C, g, name, p)
}

/// Records for one `(G, p)`. A cap overflow anywhere becomes a single `skipped(cap)`
/// record; other errors propagate.
pub fn verify_theorem(
    t: Theorem,
    g: &PermGroup,
    name: &str,
    p: u64,
) -> Result<Vec<VerificationRecord>> {
    match run(t, g, name, p) {
        Err(GroupError::CapExceeded { .. }) => Ok(vec![skip(t, name, p, "cap")]),
        other => other,
    }
}

pub(crate) fn skip(t: Theorem, name: &str, p: u64, reason: &str) -> VerificationRecord {
    VerificationRecord {
        claim_id: t.claim_id().into(),
        group_name: name.into(),
        prime: Some(p),
        normal_subgroup_fingerprint: "-".into(),
        hypothesis_held: false,
        conclusion_held: false,
        witness: None,
        status: Status::skipped(reason),
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `gcd(|G|, p − 1) = 1`.
pub fn gcd_condition(g: &PermGroup, p: u64) -> bool {
    gcd(g.order(), p as u128 - 1) == 1
}

struct Setup {
    checker: PiChecker,
    families: SylowFamilies,
}

fn family_json(fam: &grpi_core::MdFamily) -> Result<Value> {
    let members = fam
        .members
        .iter()
        .map(|m| m.key().map(|k| Value::String(k.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "d": fam.d, "members": members }))
}

fn run(t: Theorem, g: &PermGroup, name: &str, p: u64) -> Result<Vec<VerificationRecord>> {
    if t == Theorem::A && !is_p_soluble(g, p)? {
        return Ok(vec![skip(t, name, p, "not-p-soluble")]);
    }
    if t == Theorem::C && !gcd_condition(g, p) {
        return Ok(vec![skip(t, name, p, "gcd")]);
    }
    let Some(families) = SylowFamilies::new(g, p)? else {
        return Ok(Vec::new());
    };
    let setup = Setup {
        checker: PiChecker::new(g)?,
        families,
    };
    let conclusion = match t {
        Theorem::A => is_p_supersoluble(g, p)?,
        Theorem::B | Theorem::C => is_p_nilpotent(g, p)?,
    };
    let normalizer_ok = match t {
        Theorem::B => is_p_nilpotent(normalizer(g, &setup.families.sylow)?.group(), p)?,
        _ => true,
    };

    let lattice = normal_lattice(g)?;
    let mut out = Vec::new();
    for n in lattice.subgroups() {
        let admissible = match t {
            Theorem::A | Theorem::B => quotient_is_p_supersoluble(g, n, p)?,
            Theorem::C => quotient_is_p_nilpotent(g, n, p)?,
        };
        if admissible {
            out.extend(records_for(t, &setup, name, n, conclusion, normalizer_ok)?);
        }
    }
    Ok(out)
}

fn records_for(
    t: Theorem,
    setup: &Setup,
    name: &str,
    n: &Subgroup,
    conclusion: bool,
    normalizer_ok: bool,
) -> Result<[VerificationRecord; 2]> {
    let fingerprint = n.key()?.to_string();
    let passing = setup.families.passing_members(&setup.checker, n)?;
    let passing_count = passing.iter().filter(|&&b| b).count();
    let every = passing.iter().all(|&b| b);
    let family = setup.families.first_passing_family(&setup.checker, n)?;

    let families_hold = family.is_some();
    let hypothesis = families_hold && normalizer_ok;
    let status = if t == Theorem::B && families_hold && !normalizer_ok && !conclusion {
        // The normalizer condition is what keeps this group from being a counterexample.
        Status::skipped("counterexample-normalizer")
    } else {
        Status::of_implication(hypothesis, conclusion)
    };
    let mut witness = json!({
        "d": setup.families.d,
        "maximal_subgroups": passing.len(),
        "passing_maximal_subgroups": passing_count,
        "family": match &family {
            Some(f) => family_json(f)?,
            None => Value::Null,
        },
    });
    if t == Theorem::B {
        witness["normalizer_p_nilpotent"] = Value::Bool(normalizer_ok);
    }
    let sufficiency = VerificationRecord {
        claim_id: t.claim_id().into(),
        group_name: name.into(),
        prime: Some(setup.families.p),
        normal_subgroup_fingerprint: fingerprint.clone(),
        hypothesis_held: hypothesis,
        conclusion_held: conclusion,
        witness: Some(witness),
        status,
    };

    // Necessity: the conclusion forces every family to pass (and, for B, the normalizer
    // to be p-nilpotent).
    let necessary = every && normalizer_ok;
    let mut witness = json!({
        "maximal_subgroups": passing.len(),
        "passing_maximal_subgroups": passing_count,
        "every_family_passes": every,
    });
    if t == Theorem::B {
        witness["normalizer_p_nilpotent"] = Value::Bool(normalizer_ok);
    }
    let necessity = VerificationRecord {
        claim_id: t.necessity_id(),
        group_name: name.into(),
        prime: Some(setup.families.p),
        normal_subgroup_fingerprint: fingerprint,
        hypothesis_held: conclusion,
        conclusion_held: necessary,
        witness: Some(witness),
        status: Status::of_implication(conclusion, necessary),
    };
    Ok([sufficiency, necessity])
}

#[cfg(test)]
mod tests {
    use super::*;
    use grpi_core::families::{alternating, cyclic, direct_product, symmetric};

    fn by_fingerprint<'a>(
        records: &'a [VerificationRecord],
        claim: &str,
        order: &str,
    ) -> &'a VerificationRecord {
        records
            .iter()
            .find(|r| r.claim_id == claim && r.normal_subgroup_fingerprint.starts_with(order))
            .unwrap()
    }

    #[test]
    fn s4_at_two_with_n_the_whole_group() {
        let s4 = symmetric(4).unwrap();
        let records = verify_theorem_a(&s4, "S4", 2).unwrap();
        let r = by_fingerprint(&records, "theorem-a", "order=24;");
        assert!(!r.hypothesis_held && !r.conclusion_held);
        assert_eq!(r.status, Status::Pass);
        assert!(records.iter().all(|r| !r.status.is_fail()));
    }

    #[test]
    fn s3_x_c2_passes_every_family() {
        let g = direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap()).unwrap();
        let records = verify_theorem_a(&g, "S3xC2", 2).unwrap();
        assert!(!records.is_empty());
        for r in &records {
            assert_eq!(r.status, Status::Pass);
            assert!(r.hypothesis_held && r.conclusion_held, "{r:?}");
        }
    }

    #[test]
    fn a4_negative_fixture_for_b() {
        let a4 = alternating(4).unwrap();
        let records = verify_theorem_b(&a4, "A4", 2).unwrap();
        let r = by_fingerprint(&records, "theorem-b", "order=12;");
        assert!(!r.hypothesis_held && !r.conclusion_held);
        assert_eq!(r.status, Status::Pass);
        let r = by_fingerprint(&records, "theorem-b", "order=4;");
        assert!(!r.hypothesis_held && !r.conclusion_held);
    }

    #[test]
    fn s3_for_c() {
        let s3 = symmetric(3).unwrap();
        let records = verify_theorem_c(&s3, "S3", 3).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].status, Status::skipped("gcd"));

        let records = verify_theorem_c(&s3, "S3", 2).unwrap();
        assert!(!records.is_empty());
        for r in records.iter().filter(|r| r.claim_id == "theorem-c") {
            assert!(r.hypothesis_held && r.conclusion_held);
        }
    }

    #[test]
    fn c5_x_a5_documents_why_the_extra_conditions_are_needed() {
        let g = direct_product(&cyclic(5).unwrap(), &alternating(5).unwrap()).unwrap();
        let a = verify_theorem_a(&g, "C5xA5", 5).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].status, Status::skipped("not-p-soluble"));
        let b = verify_theorem_b(&g, "C5xA5", 5).unwrap();
        let r = by_fingerprint(&b, "theorem-b", "order=60;");
        assert_eq!(r.status, Status::skipped("counterexample-normalizer"));
        assert!(b.iter().all(|r| !r.status.is_fail()));
        let c = verify_theorem_c(&g, "C5xA5", 5).unwrap();
        assert_eq!(c[0].status, Status::skipped("gcd"));
    }
}
