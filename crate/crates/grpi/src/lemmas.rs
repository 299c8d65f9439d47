//! Property suites for the five preliminary lemmas, run over subgroup tuples of one group.
//!
//! Subgroups `H` range over conjugacy-class representatives (every property involved is
//! invariant under conjugation), except for the exhaustive groups of the intersection
//! identity, where every p-subgroup is used.

use std::collections::HashMap;

use grpi_core::{
    build_quotient, intersection, is_p_supersoluble, is_power_of, pi_of, subgroup_lattice,
    GroupError, PermGroup, PiChecker, QuotientContext, Result, Subgroup, SubgroupLattice,
};

use crate::record::VerificationRecord;
use crate::tally::{cap_skip, Tally};

pub const LEMMA_IDS: [&str; 5] = [
    "lemma-2.1",
    "lemma-2.2",
    "lemma-2.3",
    "lemma-2.4",
    "lemma-2.5",
];

/// Groups on which the intersection identity is checked over every p-subgroup.
pub const EXHAUSTIVE: [&str; 4] = ["S4", "A4", "D8", "C6xS3"];

/// Records for every lemma on one group. A cap overflow skips the whole group.
pub fn verify_lemmas_for_group(g: &PermGroup, name: &str) -> Result<Vec<VerificationRecord>> {
    match run(g, name) {
        Err(GroupError::CapExceeded { .. }) => Ok(LEMMA_IDS
            .iter()
            .map(|id| cap_skip(id, name, None))
            .collect()),
        other => other,
    }
}

struct Context {
    group: PermGroup,
    lattice: std::sync::Arc<SubgroupLattice>,
    pi: PiChecker,
    normals: Vec<usize>,
    representatives: Vec<usize>,
    quotients: HashMap<usize, QuotientContext>,
}

impl Context {
    fn get(&self, i: usize) -> &Subgroup {
        self.lattice.get(i)
    }

    fn quotient(&mut self, n: usize) -> Result<&QuotientContext> {
        if !self.quotients.contains_key(&n) {
            let q = build_quotient(&self.group, self.lattice.get(n))?;
            self.quotients.insert(n, q);
        }
        Ok(&self.quotients[&n])
    }

    fn p_subgroups(&self, p: u64, all: bool) -> Vec<usize> {
        (0..self.lattice.len())
            .filter(|&i| all || self.lattice.is_class_representative(i))
            .filter(|&i| self.lattice.order_of(i) == 1 || is_power_of(self.lattice.order_of(i), p))
            .collect()
    }
}

fn run(g: &PermGroup, name: &str) -> Result<Vec<VerificationRecord>> {
    let lattice = subgroup_lattice(g)?;
    let normals = (0..lattice.len())
        .filter(|&i| lattice.is_normal(i))
        .collect();
    let representatives = (0..lattice.len())
        .filter(|&i| lattice.is_class_representative(i))
        .collect();
    let mut cx = Context {
        group: g.clone(),
        pi: PiChecker::new(g)?,
        lattice,
        normals,
        representatives,
        quotients: HashMap::new(),
    };
    let mut out = vec![
        quotient_closure(&mut cx)?.to_record("lemma-2.1", name, None),
        complement_lifting(&cx)?.to_record("lemma-2.3", name, None),
    ];
    let exhaustive = EXHAUSTIVE.contains(&name);
    for p in pi_of(g.order()).primes() {
        out.push(intersection_identity(&mut cx, p, exhaustive)?.to_record(
            "lemma-2.2",
            name,
            Some(p),
        ));
        out.push(supersoluble_source(&cx, p)?.to_record("lemma-2.4", name, Some(p)));
        out.push(normal_intersection(&cx, p)?.to_record("lemma-2.5", name, Some(p)));
    }
    Ok(out)
}

/// `H` Π in `G` ⇒ `HN/N` Π in `G/N`, computed in the coset-action quotient.
fn quotient_closure(cx: &mut Context) -> Result<Tally> {
    let mut tally = Tally::default();
    for n in cx.normals.clone() {
        cx.quotient(n)?;
        let q = &cx.quotients[&n];
        let qpi = PiChecker::new(q.quotient())?;
        let images = cx
            .representatives
            .iter()
            .map(|&h| q.project_subgroup(cx.lattice.get(h)))
            .collect::<Result<Vec<_>>>()?;
        for (&h, image) in cx.representatives.iter().zip(&images) {
            tally.observe(cx.pi.holds(cx.get(h))?, || qpi.holds(image))?;
        }
    }
    Ok(tally)
}

/// `P₁N/N ∩ LN/N = (P₁∩L)N/N` for a p-subgroup `P₁`, normal `L` and normal p′-subgroup
/// `N`, compared inside `G/N`.
fn intersection_identity(cx: &mut Context, p: u64, exhaustive: bool) -> Result<Tally> {
    let mut tally = Tally::default();
    let p_subgroups = cx.p_subgroups(p, exhaustive);
    let p_prime: Vec<usize> = cx
        .normals
        .iter()
        .copied()
        .filter(|&n| !cx.lattice.order_of(n).is_multiple_of(p as u128))
        .collect();
    for n in p_prime {
        cx.quotient(n)?;
        let q = &cx.quotients[&n];
        for &l in &cx.normals {
            let lx = q.project_subgroup(cx.get(l))?;
            for &h in &p_subgroups {
                let left = intersection(&q.project_subgroup(cx.get(h))?, &lx)?;
                let right = q.project_subgroup(&intersection(cx.get(h), cx.get(l))?)?;
                tally.observe(true, || Ok(left.same_as(&right)))?;
            }
        }
    }
    Ok(tally)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Abelian normal `N ≤ M` with `(|N|, |G:M|) = 1` complemented in `M` ⇒ complemented in `G`.
fn complement_lifting(cx: &Context) -> Result<Tally> {
    let mut tally = Tally::default();
    let order = cx.group.order();
    let top = cx
        .lattice
        .find(&Subgroup::whole(&cx.group))
        .expect("the whole group is in the lattice");
    for &n in &cx.normals {
        if !cx.get(n).group().is_abelian() {
            continue;
        }
        for &m in &cx.representatives {
            let index = order / cx.lattice.order_of(m);
            if !cx.lattice.is_below(n, m) || gcd(cx.lattice.order_of(n), index) != 1 {
                continue;
            }
            let in_m = cx.lattice.complement_within(m, n).is_some();
            tally.observe(in_m, || Ok(cx.lattice.complement_within(top, n).is_some()))?;
        }
    }
    Ok(tally)
}

/// `G` p-supersoluble ⇒ every p-subgroup is Π.
fn supersoluble_source(cx: &Context, p: u64) -> Result<Tally> {
    let mut tally = Tally::default();
    let supersoluble = is_p_supersoluble(&cx.group, p)?;
    for h in cx.p_subgroups(p, false) {
        tally.observe(supersoluble, || cx.pi.holds(cx.get(h)))?;
    }
    Ok(tally)
}

/// A Π p-subgroup `H` and normal `N` give a Π subgroup `H ∩ N`.
fn normal_intersection(cx: &Context, p: u64) -> Result<Tally> {
    let mut tally = Tally::default();
    for h in cx.p_subgroups(p, false) {
        let holds = cx.pi.holds(cx.get(h))?;
        for &n in &cx.normals {
            let meet = cx.lattice.intersection(h, n);
            tally.observe(holds, || cx.pi.holds(cx.get(meet)))?;
        }
    }
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::Status;
    use grpi_core::families::{alternating, dihedral, symmetric};

    #[test]
    fn small_groups_have_no_violations() {
        for g in [
            symmetric(4).unwrap(),
            alternating(4).unwrap(),
            dihedral(4).unwrap(),
        ] {
            let name = g.label().unwrap().to_string();
            let records = verify_lemmas_for_group(&g, &name).unwrap();
            assert!(records.len() >= 5);
            for r in &records {
                assert!(!r.status.is_fail(), "{r:?}");
            }
            for id in LEMMA_IDS {
                assert!(records.iter().any(|r| r.claim_id == id), "{id}");
            }
        }
    }

    #[test]
    fn s4_exercises_each_suite() {
        let records = verify_lemmas_for_group(&symmetric(4).unwrap(), "S4").unwrap();
        let admissible = |id: &str| -> u64 {
            records
                .iter()
                .filter(|r| r.claim_id == id)
                .map(|r| r.witness.as_ref().unwrap()["admissible"].as_u64().unwrap())
                .sum()
        };
        for id in ["lemma-2.1", "lemma-2.2", "lemma-2.3", "lemma-2.5"] {
            assert!(admissible(id) > 0, "{id}");
        }
        // S4 is not 2-supersoluble, but it is 3-supersoluble.
        let r = records
            .iter()
            .find(|r| r.claim_id == "lemma-2.4" && r.prime == Some(2))
            .unwrap();
        assert_eq!(r.status, Status::PassVacuous);
        let r = records
            .iter()
            .find(|r| r.claim_id == "lemma-2.4" && r.prime == Some(3))
            .unwrap();
        assert_eq!(r.status, Status::Pass);
    }
}
