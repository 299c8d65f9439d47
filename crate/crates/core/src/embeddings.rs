//! Embedding properties whose possession implies the Π-property: permutable,
//! S-permutable, S-semipermutable, SS-quasinormal, CAP, c-normal, c♯-normal,
//! U_c-normal and Π-normal subgroups.
//!
//! Every existential witness (`T`, `B`, `I`) is searched exhaustively over the subgroup
//! lattice. [`EmbeddingChecker`] works on lattice positions and caches what the checks
//! share; the free functions wrap it.

use std::collections::HashSet;
use std::sync::Arc;
use std::sync::OnceLock;

use crate::error::{GroupError, Result};
use crate::group::{PermGroup, SubgroupKey};
use crate::lattice::{normal_lattice, subgroup_lattice, NormalLattice, SubgroupLattice};
use crate::pi::PiChecker;
use crate::quotient::build_quotient;
use crate::structure::{p_part, pi_of, sylow_subgroup, u_hypercenter};
use crate::subgroup::{product_is_subgroup, Subgroup};
use crate::table::Elem;

pub struct EmbeddingChecker {
    group: PermGroup,
    lattice: Arc<SubgroupLattice>,
    normal: Arc<NormalLattice>,
    pi: PiChecker,
    /// Per prime dividing `|G|`, the positions of all Sylow subgroups.
    sylows: Vec<(u64, Vec<usize>)>,
    /// Chief factors as pairs of subgroup-lattice positions.
    factors: Vec<(usize, usize)>,
    normal_positions: Vec<usize>,
    subnormal: Vec<OnceLock<bool>>,
    cap: Vec<OnceLock<bool>>,
    core: Vec<OnceLock<usize>>,
    /// Preimage of `Z_U(G/C)` for each normal `C`, by position of `C`.
    hypercenter_preimage: Vec<OnceLock<usize>>,
    sylows_within: Vec<OnceLock<Vec<usize>>>,
}

impl EmbeddingChecker {
    pub fn new(g: &PermGroup) -> Result<Self> {
        let lattice = subgroup_lattice(g)?;
        let normal = normal_lattice(g)?;
        let pi = PiChecker::new(g)?;
        let n = lattice.len();

        let sylows = pi_of(g.order())
            .primes()
            .map(|q| {
                let order = p_part(g.order(), q);
                (
                    q,
                    (0..n).filter(|&i| lattice.order_of(i) == order).collect(),
                )
            })
            .collect();
        let to_sub = |i: usize| {
            lattice
                .find_set(normal.set(i))
                .expect("normal subgroups are subgroups")
        };
        let factors = normal
            .covers()
            .iter()
            .map(|&(k, l)| (to_sub(k), to_sub(l)))
            .collect();
        let normal_positions = (0..n).filter(|&i| lattice.is_normal(i)).collect();

        Ok(EmbeddingChecker {
            group: g.clone(),
            lattice,
            normal,
            pi,
            sylows,
            factors,
            normal_positions,
            subnormal: (0..n).map(|_| OnceLock::new()).collect(),
            cap: (0..n).map(|_| OnceLock::new()).collect(),
            core: (0..n).map(|_| OnceLock::new()).collect(),
            hypercenter_preimage: (0..n).map(|_| OnceLock::new()).collect(),
            sylows_within: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn pi(&self) -> &PiChecker {
        &self.pi
    }

    /// Lattice position of `h`.
    pub fn position(&self, h: &Subgroup) -> Result<usize> {
        if !self.group.contains_group(h.group()) {
            return Err(GroupError::NotSubgroup);
        }
        Ok(self
            .lattice
            .find(h)
            .expect("every subgroup is in the lattice"))
    }

    fn top(&self) -> usize {
        self.lattice.len() - 1
    }

    fn order(&self) -> u128 {
        self.group.order()
    }

    /// `HT = G` as sets.
    fn supplements(&self, h: usize, t: usize) -> bool {
        self.lattice.product_size(h, t) == self.order()
    }

    pub fn is_normal(&self, h: usize) -> bool {
        self.lattice.is_normal(h)
    }

    pub fn is_subnormal(&self, h: usize) -> bool {
        *self.subnormal[h].get_or_init(|| self.compute_subnormal(h))
    }

    fn compute_subnormal(&self, h: usize) -> bool {
        let table = &self.lattice.table;
        let hgens = &self.lattice.entries[h].gens;
        let mut current = self.top();
        loop {
            if current == h {
                return true;
            }
            // Normal closure of H in the current term.
            let seeds: Vec<Elem> = self
                .lattice
                .set(current)
                .ones()
                .flat_map(|x| hgens.iter().map(move |&y| table.conj(y, x as Elem)))
                .collect();
            let next = self
                .lattice
                .find_set(&table.closure(&seeds))
                .expect("subgroup of G");
            if next == current {
                return false;
            }
            current = next;
        }
    }

    /// Position of the core `H_G`.
    pub fn core(&self, h: usize) -> usize {
        *self.core[h].get_or_init(|| {
            self.normal_positions
                .iter()
                .copied()
                .filter(|&n| self.lattice.is_below(n, h))
                .max_by_key(|&n| self.lattice.order_of(n))
                .expect("the trivial subgroup is normal")
        })
    }

    /// Position of the preimage in `G` of `Z_U(G/C)`, for normal `C`.
    pub fn hypercenter_preimage(&self, c: usize) -> Result<usize> {
        if let Some(&z) = self.hypercenter_preimage[c].get() {
            return Ok(z);
        }
        let q = build_quotient(&self.group, self.lattice.get(c))?;
        let z = u_hypercenter(q.quotient())?;
        let pre = q.preimage_subgroup(&z)?;
        let z = self.lattice.find(&pre).expect("subgroup of G");
        Ok(*self.hypercenter_preimage[c].get_or_init(|| z))
    }

    pub fn is_permutable(&self, h: usize) -> bool {
        (0..self.lattice.len()).all(|k| self.lattice.permutes(h, k))
    }

    pub fn is_s_permutable(&self, h: usize) -> bool {
        self.sylows
            .iter()
            .all(|(_, list)| list.iter().all(|&s| self.lattice.permutes(h, s)))
    }

    /// Permutes with the Sylow q-subgroups for every prime `q ∤ |H|`.
    pub fn is_s_semipermutable(&self, h: usize) -> bool {
        let order = self.lattice.order_of(h);
        self.sylows
            .iter()
            .filter(|(q, _)| !order.is_multiple_of(*q as u128))
            .all(|(_, list)| list.iter().all(|&s| self.lattice.permutes(h, s)))
    }

    fn sylows_within(&self, b: usize) -> &[usize] {
        self.sylows_within[b].get_or_init(|| {
            let order = self.lattice.order_of(b);
            pi_of(order)
                .primes()
                .flat_map(|q| {
                    let target = p_part(order, q);
                    (0..self.lattice.len()).filter(move |&s| {
                        self.lattice.order_of(s) == target && self.lattice.is_below(s, b)
                    })
                })
                .collect()
        })
    }

    /// Some `B` has `G = HB` and `H` permuting with every Sylow subgroup of `B`.
    pub fn is_ss_quasinormal(&self, h: usize) -> bool {
        (0..self.lattice.len()).any(|b| {
            self.supplements(h, b)
                && self
                    .sylows_within(b)
                    .iter()
                    .all(|&s| self.lattice.permutes(h, s))
        })
    }

    /// Covers or avoids every chief factor `L/K`.
    pub fn is_cap_subgroup(&self, h: usize) -> bool {
        *self.cap[h].get_or_init(|| {
            let hs = self.lattice.set(h);
            self.factors.iter().all(|&(k, l)| {
                let covers = self.lattice.product_size(h, l) == self.lattice.product_size(h, k);
                let avoids = hs.intersection_count(self.lattice.set(l))
                    == hs.intersection_count(self.lattice.set(k));
                covers || avoids
            })
        })
    }

    /// Some normal `T` has `HT = G` and `T ∩ H ≤ H_G`.
    pub fn is_c_normal(&self, h: usize) -> bool {
        let core = self.core(h);
        self.normal_positions.iter().any(|&t| {
            self.supplements(h, t) && self.lattice.is_below(self.lattice.intersection(h, t), core)
        })
    }

    /// Some normal `T` has `G = HT` and `H ∩ T` a CAP-subgroup.
    pub fn is_c_sharp_normal(&self, h: usize) -> bool {
        self.normal_positions.iter().any(|&t| {
            self.supplements(h, t) && self.is_cap_subgroup(self.lattice.intersection(h, t))
        })
    }

    /// `H/H_G ≤ Z_U(G/H_G)`.
    pub fn is_hypercentral_mod_core(&self, h: usize) -> Result<bool> {
        let z = self.hypercenter_preimage(self.core(h))?;
        Ok(self.lattice.is_below(h, z))
    }

    /// Some subnormal `T` has `G = HT` and `(H∩T)H_G/H_G ≤ Z_U(G/H_G)`.
    pub fn is_uc_normal(&self, h: usize) -> Result<bool> {
        let z = self.hypercenter_preimage(self.core(h))?;
        Ok((0..self.lattice.len()).any(|t| {
            self.supplements(h, t)
                && self.lattice.is_below(self.lattice.intersection(h, t), z)
                && self.is_subnormal(t)
        }))
    }

    /// Some subnormal `T` has `G = HT`, with `H ∩ T ≤ I ≤ H` for an `I` satisfying the
    /// Π-property.
    pub fn is_pi_normal(&self, h: usize) -> Result<bool> {
        if self.pi.holds(self.lattice.get(h))? {
            return Ok(true);
        }
        for t in 0..self.lattice.len() {
            if !self.supplements(h, t) || !self.is_subnormal(t) {
                continue;
            }
            let meet = self.lattice.intersection(h, t);
            for i in 0..self.lattice.len() {
                if self.lattice.is_below(meet, i)
                    && self.lattice.is_below(i, h)
                    && self.pi.holds(self.lattice.get(i))?
                {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    pub fn normal_lattice(&self) -> &Arc<NormalLattice> {
        &self.normal
    }
}

/// Distinct conjugates of `s` in `g`, by breadth-first search over the generators.
fn conjugates(g: &PermGroup, s: &Subgroup) -> Result<Vec<Subgroup>> {
    let mut seen: HashSet<SubgroupKey> = HashSet::new();
    seen.insert(s.key()?.clone());
    let mut list = vec![s.clone()];
    let mut next = 0;
    while next < list.len() {
        for x in g.generators() {
            let c = list[next].conjugate(x);
            if seen.insert(c.key()?.clone()) {
                list.push(c);
            }
        }
        next += 1;
    }
    Ok(list)
}

fn permutes_with_sylows(g: &PermGroup, h: &Subgroup, skip_dividing: bool) -> Result<bool> {
    let h = h.in_ambient(g)?;
    for q in pi_of(g.order()).primes() {
        if skip_dividing && h.order() % q as u128 == 0 {
            continue;
        }
        for s in conjugates(g, &sylow_subgroup(g, q)?)? {
            if !product_is_subgroup(&h, &s)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `HK = KH` for every subgroup `K`.
pub fn is_permutable(g: &PermGroup, h: &Subgroup) -> Result<bool> {
    let c = EmbeddingChecker::new(g)?;
    Ok(c.is_permutable(c.position(h)?))
}

/// `H` permutes with every Sylow subgroup. Works without the subgroup lattice.
pub fn is_s_permutable(g: &PermGroup, h: &Subgroup) -> Result<bool> {
    permutes_with_sylows(g, h, false)
}

/// `H` permutes with every Sylow q-subgroup for `q ∤ |H|`. Works without the lattice.
pub fn is_s_semipermutable(g: &PermGroup, h: &Subgroup) -> Result<bool> {
    permutes_with_sylows(g, h, true)
}

pub fn is_ss_quasinormal(g: &PermGroup, h: &Subgroup) -> Result<bool> {
    let c = EmbeddingChecker::new(g)?;
    Ok(c.is_ss_quasinormal(c.position(h)?))
}

pub fn is_cap_subgroup(g: &PermGroup, h: &Subgroup) -> Result<bool> {
    let c = EmbeddingChecker::new(g)?;
    Ok(c.is_cap_subgroup(c.position(h)?))
}

pub fn is_c_normal(g: &PermGroup, h: &Subgroup) -> Result<bool> {
    let c = EmbeddingChecker::new(g)?;
    Ok(c.is_c_normal(c.position(h)?))
}

pub fn is_c_sharp_normal(g: &PermGroup, h: &Subgroup) -> Result<bool> {
    let c = EmbeddingChecker::new(g)?;
    Ok(c.is_c_sharp_normal(c.position(h)?))
}

pub fn is_uc_normal(g: &PermGroup, h: &Subgroup) -> Result<bool> {
    let c = EmbeddingChecker::new(g)?;
    c.is_uc_normal(c.position(h)?)
}

pub fn is_pi_normal(g: &PermGroup, h: &Subgroup) -> Result<bool> {
    let c = EmbeddingChecker::new(g)?;
    c.is_pi_normal(c.position(h)?)
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

    fn s4() -> PermGroup {
        group(4, &["(0 1 2 3)", "(0 1)"])
    }

    #[test]
    fn permutability() {
        let s3 = group(3, &["(0 1 2)", "(0 1)"]);
        assert!(!is_permutable(&s3, &sub(&s3, &["(0 1)"])).unwrap());
        assert!(is_permutable(&s3, &sub(&s3, &["(0 1 2)"])).unwrap());
        assert!(is_permutable(&s3, &Subgroup::whole(&s3)).unwrap());

        let g = s4();
        assert!(!is_s_permutable(&g, &sub(&g, &["(0 1)(2 3)"])).unwrap());
        assert!(is_s_permutable(&g, &sub(&g, &["(0 1)(2 3)", "(0 2)(1 3)"])).unwrap());
    }

    #[test]
    fn lattice_and_conjugate_routes_agree() {
        for g in [
            s4(),
            group(4, &["(0 1 2)", "(1 2 3)"]),
            group(5, &["(0 1 2)", "(0 1)", "(3 4)"]),
        ] {
            let c = EmbeddingChecker::new(&g).unwrap();
            for i in 0..c.lattice().len() {
                let h = c.lattice().get(i).clone();
                assert_eq!(c.is_s_permutable(i), is_s_permutable(&g, &h).unwrap());
                assert_eq!(
                    c.is_s_semipermutable(i),
                    is_s_semipermutable(&g, &h).unwrap()
                );
                assert_eq!(
                    c.is_subnormal(i),
                    crate::subgroup::is_subnormal(&g, &h).unwrap()
                );
                assert_eq!(
                    c.lattice().get(c.core(i)).order(),
                    crate::subgroup::core(&g, &h).unwrap().order()
                );
            }
        }
    }

    #[test]
    fn cap_subgroups() {
        let g = s4();
        assert!(!is_cap_subgroup(&g, &sub(&g, &["(0 1 2 3)"])).unwrap());
        assert!(is_cap_subgroup(&g, &Subgroup::whole(&g)).unwrap());
        assert!(is_cap_subgroup(&g, &sub(&g, &["(0 1)(2 3)", "(0 2)(1 3)"])).unwrap());
    }

    #[test]
    fn c_normality() {
        let a4 = group(4, &["(0 1 2)", "(1 2 3)"]);
        assert!(!is_c_normal(&a4, &sub(&a4, &["(0 1)(2 3)"])).unwrap());
        assert!(is_c_normal(&a4, &Subgroup::whole(&a4)).unwrap());
        assert!(is_c_normal(&a4, &sub(&a4, &["(0 1)(2 3)", "(0 2)(1 3)"])).unwrap());
        // A Sylow 3 has the normal complement V4.
        assert!(is_c_normal(&a4, &sub(&a4, &["(0 1 2)"])).unwrap());
        assert!(is_c_sharp_normal(&a4, &sub(&a4, &["(0 1 2)"])).unwrap());
        assert!(!is_c_sharp_normal(&a4, &sub(&a4, &["(0 1)(2 3)"])).unwrap());
    }

    #[test]
    fn uc_and_pi_normality() {
        let a4 = group(4, &["(0 1 2)", "(1 2 3)"]);
        let t = sub(&a4, &["(0 1)(2 3)"]);
        assert!(!is_uc_normal(&a4, &t).unwrap());
        assert!(is_uc_normal(&a4, &Subgroup::whole(&a4)).unwrap());
        assert!(!is_pi_normal(&a4, &t).unwrap());

        let g = s4();
        assert!(!is_pi_normal(&g, &sub(&g, &["(0 1 2 3)"])).unwrap());
        assert!(is_pi_normal(&g, &sub(&g, &["(0 1)(2 3)", "(0 2)(1 3)"])).unwrap());
    }

    #[test]
    fn ss_quasinormality() {
        let g = s4();
        assert!(is_ss_quasinormal(&g, &Subgroup::whole(&g)).unwrap());
        assert!(is_ss_quasinormal(&g, &sub(&g, &["(0 1)(2 3)", "(0 2)(1 3)"])).unwrap());
        // A Sylow 2-subgroup is supplemented by a Sylow 3 of order 3 it permutes with.
        assert!(is_ss_quasinormal(&g, &sub(&g, &["(0 1 2 3)", "(0 2)"])).unwrap());
        assert!(!is_ss_quasinormal(&g, &sub(&g, &["(0 1)(2 3)"])).unwrap());
    }
}
