//! Multiplication table of a small group, with subgroups stored as bitsets over
//! element indices. Elements are sorted lexicographically by image list, so index 0 is
//! the identity and index order is independent of how the group was generated.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::Permutation;

pub(crate) type Elem = u16;

pub(crate) struct ElementTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, Elem>,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
}

impl ElementTable {
    pub(crate) fn new(group: &PermGroup) -> Result<Self> {
        let mut elements: Vec<Permutation> = group.elements()?.collect();
        elements.sort_unstable();
        assert!(elements.len() <= Elem::MAX as usize);
        let index: HashMap<Permutation, Elem> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as Elem))
            .collect();
        let n = elements.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mul.push(index[&a.compose_unchecked(b)]);
            }
        }
        let inv = elements.iter().map(|a| index[&a.inverse()]).collect();
        Ok(ElementTable {
            elements,
            index,
            mul,
            inv,
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.elements.len()
    }

    pub(crate) fn element(&self, i: Elem) -> &Permutation {
        &self.elements[i as usize]
    }

    pub(crate) fn index_of(&self, p: &Permutation) -> Option<Elem> {
        self.index.get(p).copied()
    }

    #[inline]
    pub(crate) fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub(crate) fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `g⁻¹ x g`
    #[inline]
    pub(crate) fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub(crate) fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    /// Subgroup generated by `gens`.
    pub(crate) fn closure(&self, gens: &[Elem]) -> FixedBitSet {
        let mut set = self.empty_set();
        set.insert(0);
        let mut members: Vec<Elem> = vec![0];
        let mut next = 0;
        while next < members.len() {
            let x = members[next];
            for &g in gens {
                let y = self.mul(x, g);
                if !set.put(y as usize) {
                    members.push(y);
                }
            }
            next += 1;
        }
        set
    }

    /// Extends a subgroup by extra generators, reusing the existing members.
    pub(crate) fn extend(
        &self,
        base: &FixedBitSet,
        base_gens: &[Elem],
        extra: &[Elem],
    ) -> FixedBitSet {
        let mut gens: Vec<Elem> = base_gens.to_vec();
        gens.extend_from_slice(extra);
        let mut set = base.clone();
        let mut members: Vec<Elem> = base.ones().map(|i| i as Elem).collect();
        let mut next = 0;
        while next < members.len() {
            let x = members[next];
            for &g in &gens {
                let y = self.mul(x, g);
                if !set.put(y as usize) {
                    members.push(y);
                }
            }
            next += 1;
        }
        set
    }

    pub(crate) fn conjugate_set(&self, set: &FixedBitSet, g: Elem) -> FixedBitSet {
        let mut out = self.empty_set();
        for x in set.ones() {
            out.insert(self.conj(x as Elem, g) as usize);
        }
        out
    }

    pub(crate) fn is_normal_set(
        &self,
        set: &FixedBitSet,
        gens: &[Elem],
        ambient_gens: &[Elem],
    ) -> bool {
        gens.iter().all(|&h| {
            ambient_gens
                .iter()
                .all(|&g| set.contains(self.conj(h, g) as usize))
        })
    }

    /// Size of the product set `AB` of two subgroups: `|A||B|/|A∩B|`.
    pub(crate) fn product_size(&self, a: &FixedBitSet, b: &FixedBitSet) -> usize {
        let ab = a.intersection_count(b);
        a.count_ones(..) * b.count_ones(..) / ab
    }

    /// Greedy canonical generating sequence: scan members in index order and keep each one
    /// that is not yet in the span of those kept.
    pub(crate) fn canonical_generators(&self, set: &FixedBitSet) -> Vec<Elem> {
        let target = set.count_ones(..);
        let mut gens: Vec<Elem> = Vec::new();
        let mut span = self.closure(&gens);
        for x in set.ones() {
            if span.count_ones(..) == target {
                break;
            }
            if !span.contains(x) {
                span = self.extend(&span, &gens, &[x as Elem]);
                gens.push(x as Elem);
            }
        }
        gens
    }

    pub(crate) fn set_of(&self, group: &PermGroup) -> Option<FixedBitSet> {
        let gens: Option<Vec<Elem>> = group
            .generators()
            .iter()
            .map(|g| self.index_of(g))
            .collect();
        Some(self.closure(&gens?))
    }

    pub(crate) fn element_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }
}
