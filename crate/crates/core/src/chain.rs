//! Deterministic Schreier–Sims stabilizer chains.
//!
//! Level `i` stores a base point `b_i`, the strong generators fixing
//! `b_0, …, b_{i-1}`, and a transversal `u_β` with `b_i^{u_β} = β` for every
//! `β` in the orbit of `b_i`. Every group element factors uniquely as
//! `u^{(k-1)} · … · u^{(1)} · u^{(0)}`.

use std::ops::ControlFlow;

use crate::error::{GroupError, Result};
use crate::perm::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    generators: Vec<Permutation>,
    orbit: Vec<usize>,
    /// Position of each point in `orbit`, or `NOT_IN_ORBIT`.
    position: Vec<u32>,
    reps: Vec<Permutation>,
    inverse_reps: Vec<Permutation>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        Level {
            base,
            generators: Vec::new(),
            orbit: Vec::new(),
            position: vec![NOT_IN_ORBIT; degree],
            reps: Vec::new(),
            inverse_reps: Vec::new(),
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.reps.clear();
        self.inverse_reps.clear();
        self.position.iter_mut().for_each(|p| *p = NOT_IN_ORBIT);

        let id = Permutation::identity_unchecked(degree);
        self.position[self.base] = 0;
        self.orbit.push(self.base);
        self.inverse_reps.push(id.clone());
        self.reps.push(id);
        let mut next = 0;
        while next < self.orbit.len() {
            let point = self.orbit[next];
            for s in &self.generators {
                let image = s.apply(point);
                if self.position[image] == NOT_IN_ORBIT {
                    let rep = self.reps[next].compose_unchecked(s);
                    self.position[image] = self.orbit.len() as u32;
                    self.orbit.push(image);
                    self.inverse_reps.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            next += 1;
        }
    }

    #[inline]
    fn slot(&self, point: usize) -> Option<usize> {
        match self.position[point] {
            NOT_IN_ORBIT => None,
            k => Some(k as usize),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    strong_generators: Vec<Permutation>,
}

impl StabChain {
    /// Runs the Schreier–Sims algorithm on `generators`. The result depends only on the
    /// generator list and its order.
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut strong: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut levels: Vec<Level> = Vec::new();
        for s in &strong {
            if levels.iter().all(|l| s.apply(l.base) == l.base) {
                let base = s.first_moved_point().expect("non-identity");
                levels.push(Level::new(base, degree));
            }
        }

        let mut i = levels.len() as isize - 1;
        'outer: while i >= 0 {
            let level_index = i as usize;
            Self::refresh_level(&mut levels, &strong, level_index, degree);

            let level = &levels[level_index];
            for slot in 0..level.orbit.len() {
                for s in &level.generators {
                    let beta_s = s.apply(level.orbit[slot]);
                    let target = level.slot(beta_s).expect("orbit is closed");
                    let schreier = level.reps[slot]
                        .compose_unchecked(s)
                        .compose_unchecked(&level.inverse_reps[target]);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (stuck_at, residue) = sift_from(&levels, schreier, level_index + 1);
                    if stuck_at == levels.len() && residue.is_identity() {
                        continue;
                    }
                    if stuck_at == levels.len() {
                        let base = residue.first_moved_point().expect("non-identity");
                        levels.push(Level::new(base, degree));
                    }
                    strong.push(residue);
                    i = stuck_at as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }

        StabChain {
            degree,
            levels,
            strong_generators: strong,
        }
    }

    fn refresh_level(levels: &mut [Level], strong: &[Permutation], index: usize, degree: usize) {
        let fixed: Vec<usize> = levels[..index].iter().map(|l| l.base).collect();
        let level = &mut levels[index];
        level.generators = strong
            .iter()
            .filter(|s| fixed.iter().all(|&b| s.apply(b) == b))
            .cloned()
            .collect();
        level.rebuild_orbit(degree);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_generators
    }

    /// Product of the fundamental orbit lengths.
    pub fn order(&self) -> Result<u128> {
        self.levels.iter().try_fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .ok_or(GroupError::OrderOverflow)
        })
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (stuck_at, residue) = sift_from(&self.levels, g.clone(), 0);
        stuck_at == self.levels.len() && residue.is_identity()
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// Depth-first walk over all group elements with pruning. Level 0 is decided first;
    /// after levels `0..=i` are chosen, the image of base point `b_i` under every element
    /// in the subtree is known and offered to `keep(i, b_i, image)`.
    pub fn search<K, V>(&self, mut keep: K, mut visit: V)
    where
        K: FnMut(usize, usize, usize) -> bool,
        V: FnMut(&Permutation) -> ControlFlow<()>,
    {
        let id = Permutation::identity_unchecked(self.degree);
        let _ = self.search_level(0, &id, &mut keep, &mut visit);
    }

    fn search_level<K, V>(
        &self,
        depth: usize,
        suffix: &Permutation,
        keep: &mut K,
        visit: &mut V,
    ) -> ControlFlow<()>
    where
        K: FnMut(usize, usize, usize) -> bool,
        V: FnMut(&Permutation) -> ControlFlow<()>,
    {
        let Some(level) = self.levels.get(depth) else {
            return visit(suffix);
        };
        for rep in &level.reps {
            let element = rep.compose_unchecked(suffix);
            if keep(depth, level.base, element.apply(level.base)) {
                self.search_level(depth + 1, &element, keep, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Streams all elements in the same order as [`StabChain::search`] without pruning.
    pub fn elements(&self) -> ChainElements<'_> {
        let mut suffixes = Vec::with_capacity(self.levels.len() + 1);
        suffixes.push(Permutation::identity_unchecked(self.degree));
        for (l, level) in self.levels.iter().enumerate() {
            let next = level.reps[0].compose_unchecked(&suffixes[l]);
            suffixes.push(next);
        }
        ChainElements {
            chain: self,
            digits: vec![0; self.levels.len()],
            suffixes,
            done: false,
        }
    }
}

/// Strips `g` through the levels starting at `from`. Returns the level where it got stuck
/// (or `levels.len()` if it passed all of them) and the residue.
fn sift_from(levels: &[Level], mut g: Permutation, from: usize) -> (usize, Permutation) {
    for (depth, level) in levels.iter().enumerate().skip(from) {
        let image = g.apply(level.base);
        match level.slot(image) {
            None => return (depth, g),
            Some(k) => g = g.compose_unchecked(&level.inverse_reps[k]),
        }
    }
    (levels.len(), g)
}

pub struct ChainElements<'a> {
    chain: &'a StabChain,
    digits: Vec<usize>,
    /// `suffixes[l+1] = reps[l][digits[l]] · suffixes[l]`
    suffixes: Vec<Permutation>,
    done: bool,
}

impl Iterator for ChainElements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let current = self.suffixes.last().expect("non-empty").clone();
        // Advance the odometer; the deepest level is the fastest digit.
        let levels = &self.chain.levels;
        let mut l = levels.len();
        loop {
            if l == 0 {
                self.done = true;
                break;
            }
            l -= 1;
            self.digits[l] += 1;
            if self.digits[l] < levels[l].reps.len() {
                break;
            }
            self.digits[l] = 0;
        }
        if !self.done {
            for (k, level) in levels.iter().enumerate().skip(l) {
                self.suffixes[k + 1] =
                    level.reps[self.digits[k]].compose_unchecked(&self.suffixes[k]);
            }
        }
        Some(current)
    }
}
