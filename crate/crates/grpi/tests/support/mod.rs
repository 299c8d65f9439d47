//! Brute-force oracle over explicit element lists, sharing nothing with the library
//! beyond reading generators.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use grpi_core::{PermGroup, Permutation};

type Raw = Vec<u16>;

/// Left-to-right: apply `a`, then `b`.
fn mul_raw(a: &Raw, b: &Raw) -> Raw {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub type Set = BTreeSet<usize>;

pub struct Oracle {
    pub elements: Vec<Raw>,
    index: HashMap<Raw, usize>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    pub identity: usize,
}

fn raw(p: &Permutation) -> Raw {
    p.images().map(|x| x as u16).collect()
}

impl Oracle {
    pub fn new(g: &PermGroup) -> Self {
        let id: Raw = (0..g.degree() as u16).collect();
        let gens: Vec<Raw> = g.generators().iter().map(raw).collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut next = 0;
        while next < elements.len() {
            for s in &gens {
                let y = mul_raw(&elements[next], s);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            next += 1;
        }
        let n = elements.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| index[&mul_raw(&elements[i], &elements[j])])
                    .collect()
            })
            .collect();
        let inverse = (0..n)
            .map(|i| (0..n).find(|&j| table[i][j] == 0).unwrap())
            .collect();
        Oracle {
            elements,
            index,
            table,
            inverse,
            identity: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn all(&self) -> Set {
        (0..self.order()).collect()
    }

    pub fn idx(&self, p: &Permutation) -> usize {
        self.index[&raw(p)]
    }

    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.table[self.table[self.inverse[g]][x]][g]
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: impl IntoIterator<Item = usize>) -> Set {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut set = Set::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &s in &gens {
                let y = self.table[x][s];
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn subgroup(&self, h: &grpi_core::Subgroup) -> Set {
        self.closure(h.generators().iter().map(|p| self.idx(p)))
    }

    pub fn conjugate(&self, h: &Set, g: usize) -> Set {
        h.iter().map(|&x| self.conj(x, g)).collect()
    }

    pub fn normalizer(&self, h: &Set) -> Set {
        (0..self.order())
            .filter(|&g| self.conjugate(h, g) == *h)
            .collect()
    }

    pub fn centralizer(&self, h: &Set) -> Set {
        (0..self.order())
            .filter(|&g| h.iter().all(|&x| self.table[g][x] == self.table[x][g]))
            .collect()
    }

    pub fn core(&self, h: &Set) -> Set {
        (0..self.order()).fold(h.clone(), |acc, g| {
            acc.intersection(&self.conjugate(h, g)).copied().collect()
        })
    }

    pub fn is_normal(&self, h: &Set) -> bool {
        (0..self.order()).all(|g| self.conjugate(h, g) == *h)
    }

    /// Every normal subgroup is the join of the normal closures of its elements.
    pub fn normal_subgroups(&self) -> Vec<Set> {
        let mut found: BTreeSet<Set> = BTreeSet::new();
        for x in 0..self.order() {
            let class: Vec<usize> = (0..self.order()).map(|g| self.conj(x, g)).collect();
            found.insert(self.closure(class));
        }
        loop {
            let list: Vec<Set> = found.iter().cloned().collect();
            let before = found.len();
            for a in &list {
                for b in &list {
                    found.insert(self.closure(a.union(b).copied()));
                }
            }
            if found.len() == before {
                break;
            }
        }
        found.into_iter().collect()
    }

    /// Covering pairs `(K, L)` of the normal lattice.
    pub fn chief_factors(&self) -> Vec<(Set, Set)> {
        let normals = self.normal_subgroups();
        let mut out = Vec::new();
        for k in &normals {
            for l in &normals {
                if k.len() < l.len()
                    && k.is_subset(l)
                    && !normals
                        .iter()
                        .any(|m| k.is_subset(m) && m.is_subset(l) && m != k && m != l)
                {
                    out.push((k.clone(), l.clone()));
                }
            }
        }
        out
    }

    pub fn product(&self, a: &Set, b: &Set) -> Set {
        a.iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.table[x][y])
            .collect()
    }

    /// `(|X|, index)` for `X = HK/K ∩ L/K` inside the literal coset group `G/K`.
    pub fn pi_factor(&self, h: &Set, k: &Set, l: &Set) -> (usize, usize) {
        let coset = |x: usize| -> Set { k.iter().map(|&y| self.table[x][y]).collect() };
        let mut cosets: Vec<Set> = Vec::new();
        let mut coset_of = vec![usize::MAX; self.order()];
        for x in 0..self.order() {
            if coset_of[x] == usize::MAX {
                let c = coset(x);
                for &y in &c {
                    coset_of[y] = cosets.len();
                }
                cosets.push(c);
            }
        }
        let hk = self.product(h, k);
        let x: BTreeSet<usize> = (0..cosets.len())
            .filter(|&c| cosets[c].is_subset(&hk) && cosets[c].is_subset(l))
            .collect();
        let normalizing = (0..cosets.len())
            .filter(|&c| {
                let g = *cosets[c].iter().next().unwrap();
                x.iter().all(|&d| {
                    let y = *cosets[d].iter().next().unwrap();
                    x.contains(&coset_of[self.conj(y, g)])
                })
            })
            .count();
        (x.len(), cosets.len() / normalizing)
    }

    pub fn pi_verdict(&self, h: &Set, factors: &[(Set, Set)]) -> bool {
        factors.iter().all(|(k, l)| {
            let (size, index) = self.pi_factor(h, k, l);
            is_pi_number(index, size)
        })
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    out
}

/// Every prime factor of `index` divides `size`.
pub fn is_pi_number(index: usize, size: usize) -> bool {
    prime_factors(index).iter().all(|p| size.is_multiple_of(*p))
}
