use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::chain::{ChainElements, StabChain};
use crate::error::{GroupError, Result};
use crate::perm::Permutation;
use crate::table::ElementTable;

/// Size limits. Work beyond a limit is refused with [`GroupError::CapExceeded`]
/// instead of being approximated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest degree accepted from callers (internal quotient actions may exceed it).
    pub degree_cap: usize,
    /// Largest order whose elements may be listed.
    pub enumeration_cap: u128,
    /// Largest order for normal-subgroup lattices, chief factors and the predicates built on them.
    pub normal_lattice_cap: u128,
    /// Largest order for full subgroup-lattice enumeration.
    pub subgroup_lattice_cap: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            degree_cap: 64,
            enumeration_cap: 1_000_000,
            normal_lattice_cap: 2000,
            subgroup_lattice_cap: 384,
        }
    }
}

impl Limits {
    pub(crate) fn check(&self, what: &'static str, order: u128, cap: u128) -> Result<()> {
        if order > cap {
            Err(GroupError::CapExceeded { what, order, cap })
        } else {
            Ok(())
        }
    }
}

/// Canonical identity of a subgroup: its order followed by the greedy generating
/// sequence drawn from its lexicographically sorted elements. Two subgroups of the same
/// symmetric group have equal keys exactly when they are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgroupKey {
    pub order: u128,
    pub generators: Vec<Permutation>,
}

impl fmt::Display for SubgroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order={};gens=", self.order)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

struct Inner {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: u128,
    label: Option<String>,
    limits: Limits,
    table: OnceLock<Arc<ElementTable>>,
    key: OnceLock<SubgroupKey>,
    normal_lattice: OnceLock<Arc<crate::lattice::NormalLattice>>,
    subgroup_lattice: OnceLock<Arc<crate::lattice::SubgroupLattice>>,
}

/// A finitely generated permutation group with its stabilizer chain. Cheap to clone;
/// immutable after construction.
#[derive(Clone)]
pub struct PermGroup(Arc<Inner>);

impl PermGroup {
    /// Builds a group from generators under default limits.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_limits(degree, generators, Limits::default())
    }

    pub fn with_limits(
        degree: usize,
        generators: Vec<Permutation>,
        limits: Limits,
    ) -> Result<Self> {
        if degree > limits.degree_cap {
            return Err(GroupError::DegreeCap {
                degree,
                cap: limits.degree_cap,
            });
        }
        Self::build(degree, generators, limits)
    }

    /// Same as [`PermGroup::with_limits`] but without the degree cap; used for coset actions.
    pub(crate) fn build(
        degree: usize,
        generators: Vec<Permutation>,
        limits: Limits,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(GroupError::InvalidDegree(0));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let chain = StabChain::new(degree, &generators);
        let order = chain.order()?;
        Ok(PermGroup(Arc::new(Inner {
            degree,
            generators,
            chain,
            order,
            label: None,
            limits,
            table: OnceLock::new(),
            key: OnceLock::new(),
            normal_lattice: OnceLock::new(),
            subgroup_lattice: OnceLock::new(),
        })))
    }

    pub fn trivial(degree: usize) -> Result<Self> {
        Self::new(degree, Vec::new())
    }

    /// Returns a copy carrying `label`.
    pub fn labeled(&self, label: impl Into<String>) -> Self {
        PermGroup(Arc::new(Inner {
            degree: self.0.degree,
            generators: self.0.generators.clone(),
            chain: self.0.chain.clone(),
            order: self.0.order,
            label: Some(label.into()),
            limits: self.0.limits,
            table: OnceLock::new(),
            key: OnceLock::new(),
            normal_lattice: OnceLock::new(),
            subgroup_lattice: OnceLock::new(),
        }))
    }

    pub fn ptr_eq(&self, other: &PermGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.0.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.0.chain
    }

    pub fn order(&self) -> u128 {
        self.0.order
    }

    pub fn label(&self) -> Option<&str> {
        self.0.label.as_deref()
    }

    pub fn limits(&self) -> Limits {
        self.0.limits
    }

    pub fn is_trivial(&self) -> bool {
        self.0.order == 1
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity_unchecked(self.0.degree)
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.0.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.0.degree,
                found: p.degree(),
            });
        }
        Ok(self.0.chain.contains(p))
    }

    pub(crate) fn has(&self, p: &Permutation) -> bool {
        self.0.chain.contains(p)
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree() == self.degree() && other.generators().iter().all(|g| self.has(g))
    }

    /// Same element set.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.contains_group(other)
    }

    /// Lists all elements, each exactly once, in chain order (identity first).
    pub fn elements(&self) -> Result<ChainElements<'_>> {
        self.0
            .limits
            .check("enumeration", self.0.order, self.0.limits.enumeration_cap)?;
        Ok(self.0.chain.elements())
    }

    /// Group generated by `generators`, sharing this group's limits and degree.
    pub fn sibling(&self, generators: Vec<Permutation>) -> Result<PermGroup> {
        Self::build(self.0.degree, generators, self.0.limits)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a * b == b * a))
    }

    /// Canonical identity (see [`SubgroupKey`]). Requires enumerating the group.
    pub fn key(&self) -> Result<&SubgroupKey> {
        if let Some(k) = self.0.key.get() {
            return Ok(k);
        }
        let mut elements: Vec<Permutation> = self.elements()?.collect();
        elements.sort_unstable();
        let mut picked: Vec<Permutation> = Vec::new();
        let mut span = StabChain::new(self.degree(), &picked);
        for x in elements {
            if span.order()? == self.order() {
                break;
            }
            if !span.contains(&x) {
                picked.push(x);
                span = StabChain::new(self.degree(), &picked);
            }
        }
        let key = SubgroupKey {
            order: self.order(),
            generators: picked,
        };
        Ok(self.0.key.get_or_init(|| key))
    }

    /// Records a key computed elsewhere (e.g. from an element table) for a group built
    /// from exactly those generators.
    pub(crate) fn seed_key(&self, key: SubgroupKey) {
        debug_assert_eq!(key.order, self.order());
        let _ = self.0.key.set(key);
    }

    /// Element table for lattice work, built once. Bounded by the larger lattice cap.
    pub(crate) fn table(&self) -> Result<Arc<ElementTable>> {
        if let Some(t) = self.0.table.get() {
            return Ok(t.clone());
        }
        let cap = self
            .0
            .limits
            .normal_lattice_cap
            .max(self.0.limits.subgroup_lattice_cap);
        self.0.limits.check("element table", self.0.order, cap)?;
        let table = Arc::new(ElementTable::new(self)?);
        Ok(self.0.table.get_or_init(|| table).clone())
    }

    pub(crate) fn cached_normal_lattice(
        &self,
        build: impl FnOnce() -> Result<crate::lattice::NormalLattice>,
    ) -> Result<Arc<crate::lattice::NormalLattice>> {
        if let Some(l) = self.0.normal_lattice.get() {
            return Ok(l.clone());
        }
        let lattice = Arc::new(build()?);
        Ok(self.0.normal_lattice.get_or_init(|| lattice).clone())
    }

    pub(crate) fn cached_subgroup_lattice(
        &self,
        build: impl FnOnce() -> Result<crate::lattice::SubgroupLattice>,
    ) -> Result<Arc<crate::lattice::SubgroupLattice>> {
        if let Some(l) = self.0.subgroup_lattice.get() {
            return Ok(l.clone());
        }
        let lattice = Arc::new(build()?);
        Ok(self.0.subgroup_lattice.get_or_init(|| lattice).clone())
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("label", &self.0.label)
            .field("degree", &self.0.degree)
            .field("order", &self.0.order)
            .field(
                "generators",
                &self
                    .0
                    .generators
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// `group_from_generators` under default limits.
pub fn group_from_generators(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
    PermGroup::new(degree, generators)
}
