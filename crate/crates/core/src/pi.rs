//! The Π-property: `H` satisfies it in `G` when, for every chief factor `L/K`, the index
//! `|G/K : N_{G/K}(HK/K ∩ L/K)|` is a `π(HK/K ∩ L/K)`-number.
//!
//! Every covering pair of the normal lattice is checked, so the verdict does not depend
//! on a choice of chief series. A trivial intersection has `π = ∅` and index 1, and
//! passes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::{PermGroup, SubgroupKey};
use crate::lattice::{normal_lattice, NormalLattice};
use crate::quotient::{build_quotient, QuotientContext};
use crate::structure::{
    chief_factors, generator_rank, is_pi_number, maximal_subgroups_of_p_group, pi_of,
    sylow_subgroup, ChiefFactor, PrimeSet,
};
use crate::subgroup::{intersection, normalizer, Subgroup};
use crate::table::{Elem, ElementTable};

/// Outcome at one chief factor.
#[derive(Clone, Debug)]
pub struct PiFactorRecord {
    pub chief_factor: ChiefFactor,
    /// `|HK/K ∩ L/K|`.
    pub intersection_order: u128,
    /// `|G/K : N_{G/K}(HK/K ∩ L/K)|`.
    pub normalizer_index: u128,
    pub pi_set: PrimeSet,
    pub factor_pass: bool,
}

#[derive(Clone, Debug)]
pub struct PiReport {
    pub subject: Subgroup,
    pub verdict: bool,
    pub trail: Vec<PiFactorRecord>,
}

impl PiReport {
    /// First failing chief factor, if any.
    pub fn first_failure(&self) -> Option<&PiFactorRecord> {
        self.trail.iter().find(|r| !r.factor_pass)
    }
}

/// Π-property checks against one group, reusing its chief factors and quotients and
/// remembering verdicts by subgroup.
pub struct PiChecker {
    group: PermGroup,
    lattice: Arc<NormalLattice>,
    factors: Vec<ChiefFactor>,
    quotients: Vec<OnceLock<Arc<QuotientContext>>>,
    table: Option<Arc<ElementTable>>,
    verdicts: Mutex<HashMap<SubgroupKey, bool>>,
}

impl PiChecker {
    pub fn new(g: &PermGroup) -> Result<Self> {
        let lattice = normal_lattice(g)?;
        let factors = chief_factors(g)?;
        let quotients = (0..lattice.len()).map(|_| OnceLock::new()).collect();
        let table = g.table().ok();
        Ok(PiChecker {
            group: g.clone(),
            lattice,
            factors,
            quotients,
            table,
            verdicts: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn chief_factors(&self) -> &[ChiefFactor] {
        &self.factors
    }

    pub fn normal_lattice(&self) -> &Arc<NormalLattice> {
        &self.lattice
    }

    /// `G/K` for the normal subgroup at lattice position `k`, built once.
    pub fn quotient(&self, k: usize) -> Result<Arc<QuotientContext>> {
        if let Some(q) = self.quotients[k].get() {
            return Ok(q.clone());
        }
        let q = Arc::new(build_quotient(&self.group, self.lattice.get(k))?);
        Ok(self.quotients[k].get_or_init(|| q).clone())
    }

    fn require_inside(&self, h: &Subgroup) -> Result<Subgroup> {
        if !self.group.contains_group(h.group()) {
            return Err(GroupError::NotSubgroup);
        }
        h.in_ambient(&self.group)
    }

    /// Full report with one record per chief factor, computed in the quotients `G/K`.
    pub fn report(&self, h: &Subgroup) -> Result<PiReport> {
        let h = self.require_inside(h)?;
        let mut trail = Vec::with_capacity(self.factors.len());
        for factor in &self.factors {
            trail.push(self.check_in_quotient(factor, &h)?);
        }
        let verdict = trail.iter().all(|r| r.factor_pass);
        Ok(PiReport {
            subject: h,
            verdict,
            trail,
        })
    }

    fn check_in_quotient(&self, factor: &ChiefFactor, h: &Subgroup) -> Result<PiFactorRecord> {
        let (k, _) = factor.lattice_position;
        let q = self.quotient(k)?;
        let hx = q.project_subgroup(h)?;
        let lx = q.project_subgroup(&factor.upper)?;
        let x = intersection(&hx, &lx)?;
        let normalizer_index = if x.is_trivial() {
            1
        } else {
            normalizer(q.quotient(), &x)?.index()
        };
        Ok(record(factor, x.order(), normalizer_index))
    }

    /// Verdict only, memoized. Uses the element table of `G` when available: by the
    /// correspondence theorem the index equals `|G : N_G(HK ∩ L)|` and
    /// `|HK/K ∩ L/K| = |HK ∩ L|/|K|`.
    pub fn holds(&self, h: &Subgroup) -> Result<bool> {
        let h = self.require_inside(h)?;
        let key = h.key()?.clone();
        if let Some(&v) = self.verdicts.lock().expect("poisoned").get(&key) {
            return Ok(v);
        }
        let verdict = match &self.table {
            Some(table) => self.holds_in_table(table, &h),
            None => self.report(&h)?.verdict,
        };
        self.verdicts.lock().expect("poisoned").insert(key, verdict);
        Ok(verdict)
    }

    fn holds_in_table(&self, table: &ElementTable, h: &Subgroup) -> bool {
        let hgens: Vec<Elem> = h
            .generators()
            .iter()
            .map(|x| table.index_of(x).expect("element of G"))
            .collect();
        let order = table.len() as u128;
        self.factors.iter().all(|factor| {
            let (k, l) = factor.lattice_position;
            let kentry = &self.lattice.entries[k];
            let hk = table.extend(&kentry.set, &kentry.gens, &hgens);
            let mut y = hk;
            y.intersect_with(&self.lattice.entries[l].set);
            let y_order = y.count_ones(..) as u128;
            let k_order = kentry.set.count_ones(..) as u128;
            if y_order == k_order {
                return true;
            }
            let index = order / normalizer_order(table, &y);
            is_pi_number(index, &pi_of(y_order / k_order))
        })
    }
}

fn record(
    factor: &ChiefFactor,
    intersection_order: u128,
    normalizer_index: u128,
) -> PiFactorRecord {
    let pi_set = pi_of(intersection_order);
    PiFactorRecord {
        chief_factor: factor.clone(),
        intersection_order,
        normalizer_index,
        factor_pass: is_pi_number(normalizer_index, &pi_set),
        pi_set,
    }
}

fn normalizer_order(table: &ElementTable, y: &FixedBitSet) -> u128 {
    let members: Vec<Elem> = y.ones().map(|i| i as Elem).collect();
    (0..table.len() as Elem)
        .filter(|&g| {
            members
                .iter()
                .all(|&x| y.contains(table.conj(x, g) as usize))
        })
        .count() as u128
}

/// Π-property report for `H` in `G`.
pub fn satisfies_pi_property(g: &PermGroup, h: &Subgroup) -> Result<PiReport> {
    PiChecker::new(g)?.report(h)
}

/// A set of `d` maximal subgroups of `P` meeting in `Φ(P)`, where `p^d = |P/Φ(P)|`.
#[derive(Clone, Debug)]
pub struct MdFamily {
    pub members: Vec<Subgroup>,
    pub d: u32,
}

/// The maximal subgroups of a Sylow p-subgroup, with the data needed to walk its
/// M_d families.
pub struct SylowFamilies {
    pub sylow: Subgroup,
    pub p: u64,
    pub d: u32,
    /// Maximal subgroups of `P` in key order, as subgroups of `G`.
    pub maximal: Vec<Subgroup>,
}

impl SylowFamilies {
    /// `None` when `p ∤ |G|`.
    pub fn new(g: &PermGroup, p: u64) -> Result<Option<Self>> {
        let sylow = sylow_subgroup(g, p)?;
        if sylow.is_trivial() {
            return Ok(None);
        }
        Self::of_p_group(g, &sylow, p).map(Some)
    }

    /// Families of an explicit p-subgroup `P ≤ G`.
    pub fn of_p_group(g: &PermGroup, pg: &Subgroup, p: u64) -> Result<Self> {
        let d = generator_rank(pg.group(), p)?;
        let maximal = maximal_subgroups_of_p_group(pg.group(), p)?
            .into_iter()
            .map(|m| m.in_ambient(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(SylowFamilies {
            sylow: pg.in_ambient(g)?,
            p,
            d,
            maximal,
        })
    }

    /// All families, in lexicographic order of member positions.
    pub fn families(&self) -> MdFamilies<'_> {
        MdFamilies::new(self, (0..self.maximal.len()).collect())
    }

    /// Families all of whose members are among `allowed` (positions in `maximal`), in
    /// the same relative order as [`Self::families`].
    pub fn families_among(&self, allowed: Vec<usize>) -> MdFamilies<'_> {
        MdFamilies::new(self, allowed)
    }

    pub fn family_from_positions(&self, positions: &[usize]) -> MdFamily {
        MdFamily {
            members: positions.iter().map(|&i| self.maximal[i].clone()).collect(),
            d: self.d,
        }
    }

    /// `P_i ∩ N` satisfies the Π-property, for each maximal subgroup.
    pub fn passing_members(&self, checker: &PiChecker, n: &Subgroup) -> Result<Vec<bool>> {
        self.maximal
            .iter()
            .map(|m| checker.holds(&intersection(m, n)?))
            .collect()
    }

    /// First family whose members all meet `N` in a Π-subgroup.
    pub fn first_passing_family(
        &self,
        checker: &PiChecker,
        n: &Subgroup,
    ) -> Result<Option<MdFamily>> {
        let passing = self.passing_members(checker, n)?;
        let allowed = (0..passing.len()).filter(|&i| passing[i]).collect();
        self.families_among(allowed).next().transpose()
    }

    /// Every family passes. Every maximal subgroup of `P` lies in some family, so this
    /// is the same as every maximal subgroup passing.
    pub fn every_family_passes(&self, checker: &PiChecker, n: &Subgroup) -> Result<bool> {
        Ok(self.passing_members(checker, n)?.into_iter().all(|b| b))
    }
}

/// Depth-first stream of M_d families. Members are added only if they cut the running
/// intersection by exactly a factor of `p`, so each emitted family meets in `Φ(P)`.
pub struct MdFamilies<'a> {
    source: &'a SylowFamilies,
    allowed: Vec<usize>,
    /// Positions into `allowed` plus the running intersection after each member.
    stack: Vec<(usize, Subgroup)>,
    next_candidate: usize,
    done: bool,
}

impl<'a> MdFamilies<'a> {
    fn new(source: &'a SylowFamilies, allowed: Vec<usize>) -> Self {
        MdFamilies {
            source,
            allowed,
            stack: Vec::new(),
            next_candidate: 0,
            done: false,
        }
    }

    fn step(&mut self) -> Result<Option<MdFamily>> {
        let d = self.source.d as usize;
        let p = self.source.p as u128;
        loop {
            if self.done {
                return Ok(None);
            }
            if self.next_candidate >= self.allowed.len() {
                // Backtrack.
                match self.stack.pop() {
                    Some((pos, _)) => self.next_candidate = pos + 1,
                    None => self.done = true,
                }
                continue;
            }
            let pos = self.next_candidate;
            let candidate = &self.source.maximal[self.allowed[pos]];
            let meet = match self.stack.last() {
                Some((_, current)) => intersection(current, candidate)?,
                None => candidate.clone(),
            };
            let previous = self
                .stack
                .last()
                .map_or(self.source.sylow.order(), |(_, c)| c.order());
            if meet.order() * p != previous {
                self.next_candidate += 1;
                continue;
            }
            self.stack.push((pos, meet));
            if self.stack.len() == d {
                let positions: Vec<usize> =
                    self.stack.iter().map(|(i, _)| self.allowed[*i]).collect();
                self.stack.pop();
                self.next_candidate = pos + 1;
                return Ok(Some(self.source.family_from_positions(&positions)));
            }
            self.next_candidate = pos + 1;
        }
    }
}

impl Iterator for MdFamilies<'_> {
    type Item = Result<MdFamily>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.step() {
            Ok(Some(f)) => Some(Ok(f)),
            Ok(None) => None,
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

/// All M_d families of the p-group `P`, as subgroups of `P`.
pub fn md_families(pg: &PermGroup, p: u64) -> Result<Vec<MdFamily>> {
    let whole = Subgroup::whole(pg);
    let source = SylowFamilies::of_p_group(pg, &whole, p)?;
    source.families().collect()
}

/// Every member `P_i` of `fam` has `P_i ∩ N` satisfying the Π-property in `G`.
pub fn family_hypothesis_holds(g: &PermGroup, n: &Subgroup, fam: &MdFamily) -> Result<bool> {
    let checker = PiChecker::new(g)?;
    let n = n.in_ambient(g)?;
    for member in &fam.members {
        let member = member.in_ambient(g)?;
        if !checker.holds(&intersection(&member, &n)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First family (stream order) of a Sylow p-subgroup satisfying the hypothesis for `N`.
pub fn exists_family_with_hypothesis(
    g: &PermGroup,
    p: u64,
    n: &Subgroup,
) -> Result<Option<MdFamily>> {
    let Some(source) = SylowFamilies::new(g, p)? else {
        return Ok(None);
    };
    let checker = PiChecker::new(g)?;
    source.first_passing_family(&checker, &n.in_ambient(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn p(degree: usize, text: &str) -> Permutation {
        Permutation::parse_cycles(degree, text).unwrap()
    }

    fn group(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(degree, gens.iter().map(|t| p(degree, t)).collect()).unwrap()
    }

    fn sub(g: &PermGroup, gens: &[&str]) -> Subgroup {
        Subgroup::generated(g, gens.iter().map(|t| p(g.degree(), t)).collect()).unwrap()
    }

    #[test]
    fn cyclic_four_fails_in_s4_at_the_klein_factor() {
        let s4 = group(4, &["(0 1 2 3)", "(0 1)"]);
        let h = sub(&s4, &["(0 1 2 3)"]);
        let report = satisfies_pi_property(&s4, &h).unwrap();
        assert!(!report.verdict);
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.chief_factor.lower.order(), 1);
        assert_eq!(fail.chief_factor.upper.order(), 4);
        assert_eq!(fail.normalizer_index, 3);
        assert_eq!(fail.pi_set.primes().collect::<Vec<_>>(), vec![2]);
        assert_eq!(report.trail.iter().filter(|r| !r.factor_pass).count(), 1);
        let checker = PiChecker::new(&s4).unwrap();
        assert!(!checker.holds(&h).unwrap());
    }

    #[test]
    fn trivial_and_normal_subgroups_pass() {
        let s4 = group(4, &["(0 1 2 3)", "(0 1)"]);
        let checker = PiChecker::new(&s4).unwrap();
        for h in crate::lattice::enumerate_normal_subgroups(&s4).unwrap() {
            assert!(checker.report(&h).unwrap().verdict);
            assert!(checker.holds(&h).unwrap());
        }
    }

    #[test]
    fn table_route_matches_quotient_route() {
        for g in [
            group(4, &["(0 1 2 3)", "(0 1)"]),
            group(4, &["(0 1 2)", "(1 2 3)"]),
            group(7, &["(0 1 2)", "(0 1)", "(3 4 5 6)"]),
        ] {
            let checker = PiChecker::new(&g).unwrap();
            for h in crate::lattice::enumerate_subgroups(&g, false).unwrap() {
                let report = checker.report(&h).unwrap();
                assert_eq!(report.trail.len(), checker.chief_factors().len());
                assert_eq!(checker.holds(&h).unwrap(), report.verdict, "{h:?}");
            }
        }
    }

    #[test]
    fn family_counts() {
        let c3 = group(3, &["(0 1 2)"]);
        let f = md_families(&c3, 3).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f[0].members[0].is_trivial());

        let d8 = group(4, &["(0 1 2 3)", "(0 2)"]);
        assert_eq!(md_families(&d8, 2).unwrap().len(), 3);

        let e9 = group(6, &["(0 1 2)", "(3 4 5)"]);
        assert_eq!(md_families(&e9, 3).unwrap().len(), 6);
        let e25 = group(10, &["(0 1 2 3 4)", "(5 6 7 8 9)"]);
        assert_eq!(md_families(&e25, 5).unwrap().len(), 15);
        let e8 = group(6, &["(0 1)", "(2 3)", "(4 5)"]);
        assert_eq!(md_families(&e8, 2).unwrap().len(), 28);
    }

    #[test]
    fn s4_has_no_passing_family() {
        let s4 = group(4, &["(0 1 2 3)", "(0 1)"]);
        let whole = Subgroup::whole(&s4);
        assert!(exists_family_with_hypothesis(&s4, 2, &whole)
            .unwrap()
            .is_none());
        let trivial = Subgroup::trivial(&s4);
        let fam = exists_family_with_hypothesis(&s4, 2, &trivial)
            .unwrap()
            .unwrap();
        assert_eq!(fam.d, 2);
        assert!(family_hypothesis_holds(&s4, &trivial, &fam).unwrap());
        assert!(exists_family_with_hypothesis(&s4, 5, &whole)
            .unwrap()
            .is_none());
    }
}
