//! Faithful permutation representation of `G/K` via the action on the cosets of `K`.
//!
//! Cosets are numbered by breadth-first search from the identity coset, trying the
//! parent's generators in order. Coset `i` is `K·r_i`, and `x` acts by `K·r_i ↦ K·r_i·x`.

use std::collections::HashMap;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::{Permutation, MAX_DEGREE};
use crate::subgroup::{orbit_ids, Subgroup};

pub struct QuotientContext {
    parent: PermGroup,
    kernel: Subgroup,
    coset_reps: Vec<Permutation>,
    quotient: PermGroup,
    /// Kernel orbit label of every point; the induced action on these orbits is a coset
    /// invariant used to bucket the coset lookup.
    kernel_orbit: Vec<usize>,
    orbit_reps: Vec<usize>,
    buckets: HashMap<Vec<u16>, Vec<usize>>,
}

impl QuotientContext {
    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn coset_reps(&self) -> &[Permutation] {
        &self.coset_reps
    }

    pub fn quotient(&self) -> &PermGroup {
        &self.quotient
    }

    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    fn bucket_key(&self, x: &Permutation) -> Vec<u16> {
        self.orbit_reps
            .iter()
            .map(|&r| self.kernel_orbit[x.apply(r)] as u16)
            .collect()
    }

    /// Index of the coset `K·x`, if it has been numbered.
    fn lookup(&self, x: &Permutation) -> Option<usize> {
        let candidates = self.buckets.get(&self.bucket_key(x))?;
        candidates.iter().copied().find(|&i| {
            let quotient = x.compose_unchecked(&self.coset_reps[i].inverse());
            self.kernel.group().has(&quotient)
        })
    }

    fn insert(&mut self, x: Permutation) -> usize {
        let key = self.bucket_key(&x);
        let i = self.coset_reps.len();
        self.coset_reps.push(x);
        self.buckets.entry(key).or_default().push(i);
        i
    }

    /// Image of a parent element in the quotient.
    pub fn project_element(&self, x: &Permutation) -> Result<Permutation> {
        if !self.parent.contains(x)? {
            return Err(GroupError::NotSubgroup);
        }
        Ok(self.project_unchecked(x))
    }

    fn project_unchecked(&self, x: &Permutation) -> Permutation {
        let images = self
            .coset_reps
            .iter()
            .map(|r| {
                self.lookup(&r.compose_unchecked(x))
                    .expect("cosets are closed under the parent") as u16
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// A parent element mapping to `q`.
    pub fn lift(&self, q: &Permutation) -> Result<Permutation> {
        if !self.quotient.contains(q)? {
            return Err(GroupError::NotSubgroup);
        }
        Ok(self.coset_reps[q.apply(0)].clone())
    }

    /// `HK/K` as a subgroup of the quotient.
    pub fn project_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        if !self.parent.contains_group(h.group()) {
            return Err(GroupError::NotSubgroup);
        }
        let gens = h
            .generators()
            .iter()
            .map(|x| self.project_unchecked(x))
            .filter(|q| !q.is_identity())
            .collect();
        Ok(Subgroup::new_unchecked(
            &self.quotient,
            self.quotient.sibling(gens)?,
        ))
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage_subgroup(&self, x: &Subgroup) -> Result<Subgroup> {
        if !self.quotient.contains_group(x.group()) {
            return Err(GroupError::NotSubgroup);
        }
        let mut gens = self.kernel.generators().to_vec();
        for q in x.generators() {
            gens.push(self.coset_reps[q.apply(0)].clone());
        }
        Ok(Subgroup::new_unchecked(
            &self.parent,
            self.parent.sibling(gens)?,
        ))
    }
}

/// Builds `G/K` for a normal subgroup `K` of `G`.
pub fn build_quotient(g: &PermGroup, k: &Subgroup) -> Result<QuotientContext> {
    if !g.contains_group(k.group()) {
        return Err(GroupError::NotSubgroup);
    }
    let kernel = k.in_ambient(g)?;
    if !kernel.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let index = g.order() / kernel.order();
    if index > MAX_DEGREE as u128 {
        return Err(GroupError::CapExceeded {
            what: "quotient degree",
            order: index,
            cap: MAX_DEGREE as u128,
        });
    }
    let index = index as usize;

    let kernel_orbit = orbit_ids(g.degree(), kernel.generators());
    let mut orbit_reps: Vec<usize> = kernel_orbit.clone();
    orbit_reps.sort_unstable();
    orbit_reps.dedup();

    let mut ctx = QuotientContext {
        parent: g.clone(),
        kernel,
        coset_reps: Vec::with_capacity(index),
        quotient: g.clone(),
        kernel_orbit,
        orbit_reps,
        buckets: HashMap::new(),
    };
    ctx.insert(g.identity());

    let mut images: Vec<Vec<u16>> = vec![Vec::with_capacity(index); g.generators().len()];
    let mut next = 0;
    while next < ctx.coset_reps.len() {
        let rep = ctx.coset_reps[next].clone();
        for (k, x) in g.generators().iter().enumerate() {
            let y = rep.compose_unchecked(x);
            let j = match ctx.lookup(&y) {
                Some(j) => j,
                None => ctx.insert(y),
            };
            images[k].push(j as u16);
        }
        next += 1;
    }
    debug_assert_eq!(ctx.coset_reps.len(), index);

    let gens = images
        .into_iter()
        .map(Permutation::from_images_unchecked)
        .filter(|q| !q.is_identity())
        .collect();
    ctx.quotient = PermGroup::build(index, gens, g.limits())?;
    Ok(ctx)
}
