//! Normal-subgroup and full subgroup lattices of small groups.
//!
//! Both lattices are computed on the element table of the ambient group. Entries are
//! sorted by [`SubgroupKey`] (order first), which fixes every downstream iteration order.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::{PermGroup, SubgroupKey};
use crate::subgroup::Subgroup;
use crate::table::{Elem, ElementTable};

pub(crate) struct Entry {
    pub(crate) set: FixedBitSet,
    pub(crate) gens: Vec<Elem>,
    pub(crate) subgroup: Subgroup,
}

fn make_entries(
    g: &PermGroup,
    table: &ElementTable,
    sets: impl IntoIterator<Item = FixedBitSet>,
) -> Result<Vec<Entry>> {
    let mut entries = Vec::new();
    for set in sets {
        let gens = table.canonical_generators(&set);
        let perms: Vec<_> = gens.iter().map(|&x| table.element(x).clone()).collect();
        let group = g.sibling(perms.clone())?;
        group.seed_key(SubgroupKey {
            order: set.count_ones(..) as u128,
            generators: perms,
        });
        entries.push(Entry {
            set,
            gens,
            subgroup: Subgroup::new_unchecked(g, group),
        });
    }
    entries.sort_by(|a, b| {
        a.subgroup
            .key()
            .expect("seeded")
            .cmp(b.subgroup.key().expect("seeded"))
    });
    Ok(entries)
}

fn generator_indices(g: &PermGroup, table: &ElementTable) -> Vec<Elem> {
    g.generators()
        .iter()
        .map(|x| table.index_of(x).expect("generator is an element"))
        .collect()
}

/// Conjugacy classes of elements, each as a sorted index list; classes ordered by least member.
pub(crate) fn conjugacy_classes(table: &ElementTable) -> Vec<Vec<Elem>> {
    let n = table.len();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n as Elem {
        if seen[x as usize] {
            continue;
        }
        let mut class: Vec<Elem> = (0..n as Elem).map(|g| table.conj(x, g)).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            seen[y as usize] = true;
        }
        classes.push(class);
    }
    classes
}

/// The lattice of normal subgroups of a group together with its covering pairs.
pub struct NormalLattice {
    pub(crate) table: Arc<ElementTable>,
    pub(crate) entries: Vec<Entry>,
    covers: Vec<(usize, usize)>,
    index: HashMap<FixedBitSet, usize>,
}

impl NormalLattice {
    fn build(g: &PermGroup) -> Result<Self> {
        let limits = g.limits();
        limits.check("normal lattice", g.order(), limits.normal_lattice_cap)?;
        let table = g.table()?;

        // Normal closures of single elements generate the lattice under joins.
        let mut atoms: Vec<(FixedBitSet, Vec<Elem>)> = Vec::new();
        let mut atom_seen: HashMap<FixedBitSet, ()> = HashMap::new();
        for class in conjugacy_classes(&table) {
            if class == [0] {
                continue;
            }
            let set = table.closure(&class);
            if atom_seen.insert(set.clone(), ()).is_none() {
                let gens = table.canonical_generators(&set);
                atoms.push((set, gens));
            }
        }

        let trivial = table.closure(&[]);
        let mut found: HashMap<FixedBitSet, ()> = HashMap::new();
        found.insert(trivial.clone(), ());
        let mut queue: Vec<(FixedBitSet, Vec<Elem>)> = vec![(trivial, Vec::new())];
        let mut next = 0;
        while next < queue.len() {
            let (set, gens) = queue[next].clone();
            for (atom, atom_gens) in &atoms {
                if atom.is_subset(&set) {
                    continue;
                }
                let joined = table.extend(&set, &gens, atom_gens);
                if !found.contains_key(&joined) {
                    found.insert(joined.clone(), ());
                    let mut joined_gens = gens.clone();
                    joined_gens.extend_from_slice(atom_gens);
                    queue.push((joined, joined_gens));
                }
            }
            next += 1;
        }

        let entries = make_entries(g, &table, queue.into_iter().map(|(s, _)| s))?;
        let covers = covering_pairs(&entries);
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.set.clone(), i))
            .collect();
        Ok(NormalLattice {
            table,
            entries,
            covers,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.entries[i].subgroup
    }

    pub fn subgroups(&self) -> impl ExactSizeIterator<Item = &Subgroup> {
        self.entries.iter().map(|e| &e.subgroup)
    }

    pub fn order_of(&self, i: usize) -> u128 {
        self.entries[i].subgroup.order()
    }

    /// Covering pairs `(lower, upper)` in lexicographic index order.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Index of the whole group.
    pub fn top(&self) -> usize {
        self.entries.len() - 1
    }

    /// `entry(i) ≤ entry(j)`.
    pub fn is_below(&self, i: usize, j: usize) -> bool {
        self.entries[i].set.is_subset(&self.entries[j].set)
    }

    /// Position of a subgroup in the lattice, if it is normal.
    pub fn find(&self, h: &Subgroup) -> Option<usize> {
        let set = self.table.set_of(h.group())?;
        self.index.get(&set).copied()
    }

    pub(crate) fn set(&self, i: usize) -> &FixedBitSet {
        &self.entries[i].set
    }
}

fn covering_pairs(entries: &[Entry]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for (j, upper) in entries.iter().enumerate() {
        let upper_order = upper.set.count_ones(..);
        let mut maximal: Vec<usize> = Vec::new();
        // Entries are sorted by order, so larger candidates are decided first.
        for i in (0..j).rev() {
            let lower = &entries[i].set;
            if lower.count_ones(..) == upper_order || !lower.is_subset(&upper.set) {
                continue;
            }
            if maximal.iter().all(|&m| !lower.is_subset(&entries[m].set)) {
                maximal.push(i);
            }
        }
        covers.extend(maximal.into_iter().map(|i| (i, j)));
    }
    covers.sort_unstable();
    covers
}

/// Cached normal lattice of `g`.
pub fn normal_lattice(g: &PermGroup) -> Result<Arc<NormalLattice>> {
    g.cached_normal_lattice(|| NormalLattice::build(g))
}

/// All normal subgroups of `g`, each once, sorted by canonical key.
pub fn enumerate_normal_subgroups(g: &PermGroup) -> Result<Vec<Subgroup>> {
    Ok(normal_lattice(g)?.subgroups().cloned().collect())
}

/// The full subgroup lattice, with conjugacy classes.
pub struct SubgroupLattice {
    pub(crate) table: Arc<ElementTable>,
    pub(crate) entries: Vec<Entry>,
    index: HashMap<FixedBitSet, usize>,
    /// Index of the first (canonical) member of each entry's conjugacy class.
    class_rep: Vec<usize>,
    normal: Vec<bool>,
}

impl SubgroupLattice {
    fn build(g: &PermGroup) -> Result<Self> {
        let limits = g.limits();
        limits.check("subgroup lattice", g.order(), limits.subgroup_lattice_cap)?;
        let table = g.table()?;
        let n = table.len();

        // Cyclic subgroups of prime-power order generate every subgroup.
        let mut cyclic: Vec<(FixedBitSet, Elem)> = Vec::new();
        let mut cyclic_seen: HashMap<FixedBitSet, ()> = HashMap::new();
        for x in 1..n as Elem {
            if !is_prime_power(table.element_order(x)) {
                continue;
            }
            let set = table.closure(&[x]);
            if cyclic_seen.insert(set.clone(), ()).is_none() {
                cyclic.push((set, x));
            }
        }

        let trivial = table.closure(&[]);
        let mut found: HashMap<FixedBitSet, ()> = HashMap::new();
        found.insert(trivial.clone(), ());
        let mut queue: Vec<(FixedBitSet, Vec<Elem>)> = vec![(trivial, Vec::new())];
        let mut next = 0;
        while next < queue.len() {
            let (set, gens) = queue[next].clone();
            for (c, x) in &cyclic {
                if c.is_subset(&set) {
                    continue;
                }
                let joined = table.extend(&set, &gens, &[*x]);
                if !found.contains_key(&joined) {
                    found.insert(joined.clone(), ());
                    let mut joined_gens = gens.clone();
                    joined_gens.push(*x);
                    queue.push((joined, joined_gens));
                }
            }
            next += 1;
        }

        let entries = make_entries(g, &table, queue.into_iter().map(|(s, _)| s))?;
        let index: HashMap<FixedBitSet, usize> = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.set.clone(), i))
            .collect();

        let ambient_gens = generator_indices(g, &table);
        let normal: Vec<bool> = entries
            .iter()
            .map(|e| table.is_normal_set(&e.set, &e.gens, &ambient_gens))
            .collect();

        let mut class_rep = vec![usize::MAX; entries.len()];
        for i in 0..entries.len() {
            if class_rep[i] != usize::MAX {
                continue;
            }
            class_rep[i] = i;
            if normal[i] {
                continue;
            }
            for g in 0..n as Elem {
                let conj = table.conjugate_set(&entries[i].set, g);
                let j = index[&conj];
                class_rep[j] = i;
            }
        }

        Ok(SubgroupLattice {
            table,
            entries,
            index,
            class_rep,
            normal,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.entries[i].subgroup
    }

    pub fn subgroups(&self) -> impl ExactSizeIterator<Item = &Subgroup> {
        self.entries.iter().map(|e| &e.subgroup)
    }

    pub fn order_of(&self, i: usize) -> u128 {
        self.entries[i].subgroup.order()
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn is_class_representative(&self, i: usize) -> bool {
        self.class_rep[i] == i
    }

    pub fn class_representative(&self, i: usize) -> usize {
        self.class_rep[i]
    }

    /// `entry(i) ≤ entry(j)`.
    pub fn is_below(&self, i: usize, j: usize) -> bool {
        self.entries[i].set.is_subset(&self.entries[j].set)
    }

    pub fn find(&self, h: &Subgroup) -> Option<usize> {
        let set = self.table.set_of(h.group())?;
        self.index.get(&set).copied()
    }

    pub(crate) fn find_set(&self, set: &FixedBitSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub(crate) fn set(&self, i: usize) -> &FixedBitSet {
        &self.entries[i].set
    }

    pub fn intersection(&self, i: usize, j: usize) -> usize {
        let mut meet = self.entries[i].set.clone();
        meet.intersect_with(&self.entries[j].set);
        self.index[&meet]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        if self.is_below(i, j) {
            return j;
        }
        if self.is_below(j, i) {
            return i;
        }
        let joined = self.table.extend(
            &self.entries[i].set,
            &self.entries[i].gens,
            &self.entries[j].gens,
        );
        self.index[&joined]
    }

    /// `|H_i H_j|` as a set.
    pub fn product_size(&self, i: usize, j: usize) -> u128 {
        self.table
            .product_size(&self.entries[i].set, &self.entries[j].set) as u128
    }

    /// `H_i H_j` is a subgroup.
    pub fn permutes(&self, i: usize, j: usize) -> bool {
        self.product_size(i, j) == self.order_of(self.join(i, j))
    }

    /// First subgroup (in key order) complementing entry `n` inside entry `within`.
    pub fn complement_within(&self, within: usize, n: usize) -> Option<usize> {
        let target = self.order_of(within) / self.order_of(n);
        (0..self.len()).find(|&h| {
            self.order_of(h) == target
                && self.is_below(h, within)
                && self.entries[h].set.intersection_count(&self.entries[n].set) == 1
        })
    }
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while !n.is_multiple_of(p) {
        p += 1;
    }
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// Cached full subgroup lattice of `g`.
pub fn subgroup_lattice(g: &PermGroup) -> Result<Arc<SubgroupLattice>> {
    g.cached_subgroup_lattice(|| SubgroupLattice::build(g))
}

/// All subgroups (or one per conjugacy class), sorted by canonical key.
pub fn enumerate_subgroups(g: &PermGroup, up_to_conjugacy: bool) -> Result<Vec<Subgroup>> {
    let lattice = subgroup_lattice(g)?;
    Ok((0..lattice.len())
        .filter(|&i| !up_to_conjugacy || lattice.is_class_representative(i))
        .map(|i| lattice.get(i).clone())
        .collect())
}

/// Some `H` with `HN = G` and `H ∩ N = 1`, or `None` when no complement exists.
pub fn find_complement(g: &PermGroup, n: &Subgroup) -> Result<Option<Subgroup>> {
    if !g.contains_group(n.group()) {
        return Err(GroupError::NotSubgroup);
    }
    let n = n.in_ambient(g)?;
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let lattice = subgroup_lattice(g)?;
    let n_index = lattice.find(&n).expect("every subgroup is in the lattice");
    Ok(lattice
        .complement_within(lattice.len() - 1, n_index)
        .map(|h| lattice.get(h).clone()))
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

    fn orders(subgroups: &[Subgroup]) -> Vec<u128> {
        subgroups.iter().map(Subgroup::order).collect()
    }

    #[test]
    fn normal_subgroups_of_small_groups() {
        let s4 = group(4, &["(0 1 2 3)", "(0 1)"]);
        assert_eq!(
            orders(&enumerate_normal_subgroups(&s4).unwrap()),
            vec![1, 4, 12, 24]
        );
        let a5 = group(5, &["(0 1 2)", "(2 3 4)"]);
        assert_eq!(
            orders(&enumerate_normal_subgroups(&a5).unwrap()),
            vec![1, 60]
        );
        let c6 = group(5, &["(0 1 2)(3 4)"]);
        assert_eq!(
            orders(&enumerate_normal_subgroups(&c6).unwrap()),
            vec![1, 2, 3, 6]
        );
    }

    #[test]
    fn covering_pairs_of_c6_form_a_diamond() {
        let c6 = group(5, &["(0 1 2)(3 4)"]);
        let lattice = normal_lattice(&c6).unwrap();
        assert_eq!(lattice.covers(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn subgroup_counts() {
        let c6 = group(5, &["(0 1 2)(3 4)"]);
        assert_eq!(enumerate_subgroups(&c6, false).unwrap().len(), 4);
        let s3 = group(3, &["(0 1 2)", "(0 1)"]);
        assert_eq!(enumerate_subgroups(&s3, false).unwrap().len(), 6);
        assert_eq!(enumerate_subgroups(&s3, true).unwrap().len(), 4);
        let q8 = group(8, &["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"]);
        assert_eq!(q8.order(), 8);
        assert_eq!(enumerate_subgroups(&q8, false).unwrap().len(), 6);
        let s4 = group(4, &["(0 1 2 3)", "(0 1)"]);
        assert_eq!(enumerate_subgroups(&s4, false).unwrap().len(), 30);
        assert_eq!(enumerate_subgroups(&s4, true).unwrap().len(), 11);
    }

    #[test]
    fn complements() {
        let s3 = group(3, &["(0 1 2)", "(0 1)"]);
        let c3 = Subgroup::generated(&s3, vec![p(3, "(0 1 2)")]).unwrap();
        let h = find_complement(&s3, &c3).unwrap().unwrap();
        assert_eq!(h.order(), 2);
        assert!(crate::subgroup::intersection(&h, &c3).unwrap().is_trivial());
        let whole = Subgroup::whole(&s3);
        assert!(find_complement(&s3, &whole).unwrap().unwrap().is_trivial());
        let c4 = group(4, &["(0 1 2 3)"]);
        let c2 = Subgroup::generated(&c4, vec![p(4, "(0 2)(1 3)")]).unwrap();
        assert!(find_complement(&c4, &c2).unwrap().is_none());
        let t = Subgroup::generated(&s3, vec![p(3, "(0 1)")]).unwrap();
        assert_eq!(find_complement(&s3, &t).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn lattice_caps_are_enforced() {
        let limits = crate::group::Limits {
            subgroup_lattice_cap: 10,
            ..Default::default()
        };
        let s4 = PermGroup::with_limits(4, vec![p(4, "(0 1 2 3)"), p(4, "(0 1)")], limits).unwrap();
        assert!(matches!(
            enumerate_subgroups(&s4, false),
            Err(GroupError::CapExceeded { .. })
        ));
    }
}
