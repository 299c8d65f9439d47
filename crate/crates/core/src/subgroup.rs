//! Subgroups of an ambient permutation group and the relative constructions on them.
//!
//! The element searches (normalizer, centralizer, intersection) walk the ambient
//! stabilizer chain and prune a branch as soon as the image of a base point cannot
//! belong to a solution.

use std::fmt;
use std::ops::ControlFlow;

use crate::error::{GroupError, Result};
use crate::group::{PermGroup, SubgroupKey};
use crate::perm::Permutation;

#[derive(Clone)]
pub struct Subgroup {
    ambient: PermGroup,
    group: PermGroup,
}

impl Subgroup {
    /// Wraps `group` as a subgroup of `ambient`, checking containment.
    pub fn new(ambient: &PermGroup, group: PermGroup) -> Result<Self> {
        if !ambient.contains_group(&group) {
            return Err(GroupError::NotSubgroup);
        }
        Ok(Subgroup {
            ambient: ambient.clone(),
            group,
        })
    }

    pub(crate) fn new_unchecked(ambient: &PermGroup, group: PermGroup) -> Self {
        debug_assert!(ambient.contains_group(&group));
        Subgroup {
            ambient: ambient.clone(),
            group,
        }
    }

    pub fn generated(ambient: &PermGroup, generators: Vec<Permutation>) -> Result<Self> {
        let group = ambient.sibling(generators)?;
        Self::new(ambient, group)
    }

    pub fn whole(ambient: &PermGroup) -> Self {
        Subgroup {
            ambient: ambient.clone(),
            group: ambient.clone(),
        }
    }

    pub fn trivial(ambient: &PermGroup) -> Self {
        let group = ambient.sibling(Vec::new()).expect("trivial group");
        Subgroup {
            ambient: ambient.clone(),
            group,
        }
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn index(&self) -> u128 {
        self.ambient.order() / self.group.order()
    }

    pub fn generators(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.group.has(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial()
    }

    pub fn key(&self) -> Result<&SubgroupKey> {
        self.group.key()
    }

    /// `self ≤ other` as element sets.
    pub fn is_contained_in(&self, other: &Subgroup) -> bool {
        other.group.contains_group(&self.group)
    }

    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.group.same_elements(&other.group)
    }

    pub fn is_normal(&self) -> bool {
        is_normalized_by(&self.group, self.ambient.generators())
    }

    /// Re-homes this subgroup in a different ambient group that contains it.
    pub fn in_ambient(&self, ambient: &PermGroup) -> Result<Subgroup> {
        Subgroup::new(ambient, self.group.clone())
    }

    pub fn conjugate(&self, g: &Permutation) -> Subgroup {
        let gens = self
            .generators()
            .iter()
            .map(|h| h.conjugate_by(g))
            .collect();
        Subgroup::new_unchecked(
            &self.ambient,
            self.ambient.sibling(gens).expect("same degree"),
        )
    }

    fn with_group(&self, group: PermGroup) -> Subgroup {
        Subgroup::new_unchecked(&self.ambient, group)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field(
                "generators",
                &self
                    .generators()
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>(),
            )
            .field("ambient_order", &self.ambient.order())
            .finish()
    }
}

fn is_normalized_by(group: &PermGroup, by: &[Permutation]) -> bool {
    group
        .generators()
        .iter()
        .all(|h| by.iter().all(|g| group.has(&h.conjugate_by(g))))
}

fn same_ambient(a: &Subgroup, b: &Subgroup) -> Result<()> {
    if a.ambient.ptr_eq(&b.ambient) || a.ambient.same_elements(&b.ambient) {
        Ok(())
    } else {
        Err(GroupError::AmbientMismatch)
    }
}

fn require_inside(g: &PermGroup, h: &Subgroup) -> Result<()> {
    if h.group.degree() != g.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: g.degree(),
            found: h.group.degree(),
        });
    }
    if !g.contains_group(&h.group) {
        return Err(GroupError::NotSubgroup);
    }
    Ok(())
}

/// Orbit size of every point under the group generated by `gens`.
pub(crate) fn orbit_sizes(degree: usize, gens: &[Permutation]) -> Vec<usize> {
    let ids = orbit_ids(degree, gens);
    let mut counts = vec![0usize; degree];
    for &id in &ids {
        counts[id] += 1;
    }
    ids.iter().map(|&id| counts[id]).collect()
}

/// Orbit label of every point: the smallest point of its orbit.
pub(crate) fn orbit_ids(degree: usize, gens: &[Permutation]) -> Vec<usize> {
    let mut id = vec![usize::MAX; degree];
    for start in 0..degree {
        if id[start] != usize::MAX {
            continue;
        }
        id[start] = start;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g.apply(x);
                if id[y] == usize::MAX {
                    id[y] = start;
                    stack.push(y);
                }
            }
        }
    }
    id
}

/// Collects `{x ∈ within : test(x)}` into a subgroup grown from `start`, which must
/// already satisfy the test. `keep` prunes on partial base images.
fn search_subgroup(
    within: &PermGroup,
    start: PermGroup,
    keep: impl Fn(usize, usize) -> bool,
    test: impl Fn(&Permutation) -> bool,
) -> PermGroup {
    let mut result = start;
    within.chain().search(
        |_, base, image| keep(base, image),
        |x| {
            if !x.is_identity() && !result.has(x) && test(x) {
                let mut gens = result.generators().to_vec();
                gens.push(x.clone());
                result = result.sibling(gens).expect("same degree");
                if result.order() == within.order() {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        },
    );
    result
}

/// `N_G(H) = {g ∈ G : H^g = H}`.
pub fn normalizer(g: &PermGroup, h: &Subgroup) -> Result<Subgroup> {
    require_inside(g, h)?;
    let sizes = orbit_sizes(g.degree(), h.generators());
    let hgroup = h.group.clone();
    let found = search_subgroup(
        g,
        hgroup.clone(),
        |base, image| sizes[base] == sizes[image],
        |x| is_normalized_by(&hgroup, std::slice::from_ref(x)),
    );
    Ok(Subgroup::new_unchecked(g, found))
}

/// `C_G(H) = {g ∈ G : gh = hg for all h ∈ H}`.
pub fn centralizer(g: &PermGroup, h: &Subgroup) -> Result<Subgroup> {
    require_inside(g, h)?;
    let sizes = orbit_sizes(g.degree(), h.generators());
    let hgens = h.generators().to_vec();
    let found = search_subgroup(
        g,
        g.sibling(Vec::new())?,
        |base, image| sizes[base] == sizes[image],
        |x| hgens.iter().all(|y| (x * y) == (y * x)),
    );
    Ok(Subgroup::new_unchecked(g, found))
}

/// `Z(G)`.
pub fn center(g: &PermGroup) -> Result<Subgroup> {
    centralizer(g, &Subgroup::whole(g))
}

/// Smallest normal subgroup of `G` containing `S`.
pub fn normal_closure(g: &PermGroup, s: &Subgroup) -> Result<Subgroup> {
    require_inside(g, s)?;
    Ok(Subgroup::new_unchecked(
        g,
        normal_closure_of(g, s.generators())?,
    ))
}

pub(crate) fn normal_closure_of(g: &PermGroup, seeds: &[Permutation]) -> Result<PermGroup> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = g.sibling(Vec::new())?;
    let mut queue: Vec<Permutation> = seeds.to_vec();
    while let Some(x) = queue.pop() {
        if current.has(&x) {
            continue;
        }
        gens.push(x.clone());
        current = g.sibling(gens.clone())?;
        for y in g.generators() {
            queue.push(x.conjugate_by(y));
        }
    }
    // Conjugates of every accepted generator were queued, so `current` is normal.
    Ok(current)
}

/// Core `H_G`: the largest normal subgroup of `G` inside `H`.
pub fn core(g: &PermGroup, h: &Subgroup) -> Result<Subgroup> {
    require_inside(g, h)?;
    let whole = Subgroup::whole(g);
    let mut current = Subgroup::new_unchecked(g, h.group.clone());
    loop {
        let mut changed = false;
        for x in g.generators() {
            if is_normalized_by(&current.group, std::slice::from_ref(x)) {
                continue;
            }
            let conj = current.conjugate(x);
            current = intersection(&current, &conj)?;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    debug_assert!(current.is_contained_in(&whole));
    Ok(current)
}

/// `A ∩ B`, found by walking the chain of `A` and keeping base images inside the
/// matching orbits of `B`.
pub fn intersection(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    same_ambient(a, b)?;
    if a.order() > b.order() {
        return intersection(b, a);
    }
    if b.group.contains_group(&a.group) {
        return Ok(a.clone());
    }
    let orbit_of_b = orbit_ids(a.group.degree(), b.generators());
    let bgroup = b.group.clone();
    let found = search_subgroup(
        &a.group,
        a.group.sibling(Vec::new())?,
        |base, image| orbit_of_b[base] == orbit_of_b[image],
        |x| bgroup.has(x),
    );
    Ok(a.with_group(found))
}

/// `⟨A ∪ B⟩`.
pub fn join(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    same_ambient(a, b)?;
    if a.group.contains_group(&b.group) {
        return Ok(a.clone());
    }
    if b.group.contains_group(&a.group) {
        return Ok(b.clone());
    }
    let mut gens = a.generators().to_vec();
    gens.extend(b.generators().iter().cloned());
    Ok(a.with_group(a.ambient.sibling(gens)?))
}

/// Whether the product set `AB` is a subgroup, i.e. `AB = BA`.
pub fn product_is_subgroup(a: &Subgroup, b: &Subgroup) -> Result<bool> {
    let meet = intersection(a, b)?;
    let product = a.order() * b.order() / meet.order();
    Ok(join(a, b)?.order() == product)
}

/// Subnormality via the descent `H_0 = G`, `H_{i+1} = H^{H_i}`.
pub fn is_subnormal(g: &PermGroup, h: &Subgroup) -> Result<bool> {
    require_inside(g, h)?;
    let mut current = g.clone();
    loop {
        if current.order() == h.order() {
            return Ok(true);
        }
        let next = normal_closure_of(&current, h.generators())?;
        if next.order() == current.order() {
            return Ok(false);
        }
        current = next;
    }
}
