//! Structural subgroups: Sylow subgroups, Frattini subgroups and maximal subgroups of
//! p-groups, chief factors, `O_p`, `O_{p'}`, `O^p`, the U-hypercenter, and the
//! p-soluble / p-supersoluble / p-nilpotent predicates (for `G` and for `G/N`).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::lattice::{normal_lattice, NormalLattice};
use crate::perm::Permutation;
use crate::subgroup::{core, normal_closure_of, normalizer, Subgroup};

/// A finite set of primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeSet(BTreeSet<u64>);

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet::default()
    }

    pub fn from_primes(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in primes {
            require_prime(p)?;
            set.insert(p);
        }
        Ok(PrimeSet(set))
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.contains(&p)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(p))
    }
}

/// Prime divisors of `n`; `π(1) = ∅`.
pub fn pi_of(n: u128) -> PrimeSet {
    let mut set = BTreeSet::new();
    let mut m = n;
    let mut d: u128 = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            set.insert(d as u64);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        set.insert(m as u64);
    }
    PrimeSet(set)
}

/// Every prime divisor of `n` lies in `pi`. 1 is a π-number for every π.
pub fn is_pi_number(n: u128, pi: &PrimeSet) -> bool {
    pi_of(n).is_subset(pi)
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u128, p: u64) -> u128 {
    let p = p as u128;
    let mut m = n;
    let mut part = 1;
    while m.is_multiple_of(p) {
        m /= p;
        part *= p;
    }
    part
}

/// `n` is `p^k` for some `k ≥ 0`.
pub fn is_power_of(n: u128, p: u64) -> bool {
    p_part(n, p) == n
}

fn require_p_group(group: &PermGroup, p: u64) -> Result<()> {
    require_prime(p)?;
    if is_power_of(group.order(), p) {
        Ok(())
    } else {
        Err(GroupError::NotPGroup(p))
    }
}

/// Smallest `m ≥ 1` with `x^m ∈ q`.
fn order_modulo(x: &Permutation, q: &PermGroup) -> u64 {
    let mut y = x.clone();
    let mut m = 1;
    while !q.has(&y) {
        y = y.compose_unchecked(x);
        m += 1;
    }
    m
}

/// A Sylow p-subgroup, grown by normalizer ascent from the first element of p-power
/// order in chain order. Trivial when `p ∤ |G|`.
pub fn sylow_subgroup(g: &PermGroup, p: u64) -> Result<Subgroup> {
    require_prime(p)?;
    let target = p_part(g.order(), p);
    if target == 1 {
        return Ok(Subgroup::trivial(g));
    }
    let start = g
        .elements()?
        .find(|x| !x.is_identity() && is_power_of(x.order() as u128, p))
        .expect("Cauchy: an element of order p exists");
    let mut q = Subgroup::generated(g, vec![start])?;
    while q.order() < target {
        // p divides [N_G(Q) : Q], so some coset of Q in N_G(Q) has order p.
        let n = normalizer(g, &q)?;
        let mut step = None;
        for x in n.group().elements()? {
            if q.contains(&x) {
                continue;
            }
            let m = order_modulo(&x, q.group());
            if m.is_multiple_of(p) {
                step = Some(x.pow(m / p));
                break;
            }
        }
        let y = step.expect("p divides the normalizer index");
        let mut gens = q.generators().to_vec();
        gens.push(y);
        q = Subgroup::generated(g, gens)?;
    }
    Ok(q)
}

/// `Φ(P)`, the normal closure of the p-th powers and commutators of the generators.
/// Returned as a subgroup of `P`.
pub fn frattini_of_p_group(pg: &PermGroup, p: u64) -> Result<Subgroup> {
    require_p_group(pg, p)?;
    let gens = pg.generators();
    let mut seeds = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        seeds.push(a.pow(p));
        for b in &gens[i + 1..] {
            seeds.push(a.commutator(b));
        }
    }
    seeds.retain(|s| !s.is_identity());
    Ok(Subgroup::new_unchecked(pg, normal_closure_of(pg, &seeds)?))
}

/// `d` with `p^d = |P/Φ(P)|`.
pub fn generator_rank(pg: &PermGroup, p: u64) -> Result<u32> {
    require_p_group(pg, p)?;
    if pg.is_trivial() {
        return Err(GroupError::TrivialGroup);
    }
    let phi = frattini_of_p_group(pg, p)?;
    let quotient = pg.order() / phi.order();
    Ok(quotient.ilog(p as u128))
}

/// Elements of `P` whose images form a basis of `P/Φ(P)`, picked greedily from the
/// generators of `P`.
pub(crate) fn frattini_basis(pg: &PermGroup, phi: &Subgroup) -> Result<Vec<Permutation>> {
    let mut span = phi.group().clone();
    let mut basis = Vec::new();
    for x in pg.generators() {
        if span.has(x) {
            continue;
        }
        basis.push(x.clone());
        let mut gens = span.generators().to_vec();
        gens.push(x.clone());
        span = pg.sibling(gens)?;
    }
    Ok(basis)
}

/// All maximal subgroups of a nontrivial p-group: the preimages of the hyperplanes of
/// `P/Φ(P)`, sorted by canonical key.
pub fn maximal_subgroups_of_p_group(pg: &PermGroup, p: u64) -> Result<Vec<Subgroup>> {
    require_p_group(pg, p)?;
    if pg.is_trivial() {
        return Err(GroupError::TrivialGroup);
    }
    let phi = frattini_of_p_group(pg, p)?;
    let basis = frattini_basis(pg, &phi)?;
    let d = basis.len();

    let mut result = Vec::new();
    // A hyperplane is the kernel of a functional f, scaled so its leading nonzero
    // coordinate f_k is 1. The kernel is spanned by Φ and x_j·x_k^(-f_j), j ≠ k.
    for k in 0..d {
        let free = d - k - 1;
        let count = (p as usize).pow(free as u32);
        for code in 0..count {
            let mut f = vec![0u64; d];
            f[k] = 1;
            let mut c = code;
            for slot in f.iter_mut().skip(k + 1) {
                *slot = (c % p as usize) as u64;
                c /= p as usize;
            }
            let mut gens = phi.generators().to_vec();
            for j in 0..d {
                if j == k {
                    continue;
                }
                let exponent = (p - f[j] % p) % p;
                gens.push(basis[j].compose_unchecked(&basis[k].pow(exponent)));
            }
            gens.retain(|x| !x.is_identity());
            result.push(Subgroup::new_unchecked(pg, pg.sibling(gens)?));
        }
    }
    sort_by_key(&mut result)?;
    Ok(result)
}

pub(crate) fn sort_by_key(subgroups: &mut [Subgroup]) -> Result<()> {
    for h in subgroups.iter() {
        h.key()?;
    }
    subgroups.sort_by(|a, b| a.key().expect("computed").cmp(b.key().expect("computed")));
    Ok(())
}

/// A chief factor `L/K`: a covering pair of the normal-subgroup lattice.
#[derive(Clone, Debug)]
pub struct ChiefFactor {
    pub lower: Subgroup,
    pub upper: Subgroup,
    pub factor_order: u128,
    /// Positions of `lower` and `upper` in the normal lattice.
    pub lattice_position: (usize, usize),
}

impl ChiefFactor {
    /// `|L/K|` is a power of `p`.
    pub fn is_p_factor_for(&self, p: u64) -> bool {
        is_power_of(self.factor_order, p)
    }
}

fn factors_of(lattice: &NormalLattice) -> Vec<ChiefFactor> {
    lattice
        .covers()
        .iter()
        .map(|&(i, j)| ChiefFactor {
            lower: lattice.get(i).clone(),
            upper: lattice.get(j).clone(),
            factor_order: lattice.order_of(j) / lattice.order_of(i),
            lattice_position: (i, j),
        })
        .collect()
}

/// Every chief factor of `G`, from every chief series.
pub fn chief_factors(g: &PermGroup) -> Result<Vec<ChiefFactor>> {
    let lattice = normal_lattice(g)?;
    Ok(factors_of(&lattice))
}

/// One chief series `1 = G_0 < … < G_r = G`, always stepping to the least (by key)
/// normal subgroup covering the current term.
pub fn chief_series(g: &PermGroup) -> Result<Vec<Subgroup>> {
    let lattice = normal_lattice(g)?;
    let mut current = 0;
    let mut series = vec![lattice.get(0).clone()];
    while current != lattice.top() {
        let &(_, next) = lattice
            .covers()
            .iter()
            .find(|&&(i, _)| i == current)
            .expect("a proper normal subgroup is covered");
        series.push(lattice.get(next).clone());
        current = next;
    }
    Ok(series)
}

/// Largest normal p-subgroup, the core of a Sylow p-subgroup.
pub fn o_p(g: &PermGroup, p: u64) -> Result<Subgroup> {
    let sylow = sylow_subgroup(g, p)?;
    core(g, &sylow)
}

/// Largest normal p′-subgroup.
pub fn o_p_prime(g: &PermGroup, p: u64) -> Result<Subgroup> {
    require_prime(p)?;
    let limits = g.limits();
    if g.order() <= limits.normal_lattice_cap {
        let lattice = normal_lattice(g)?;
        // The largest normal p′-subgroup contains all the others; the last such
        // entry in order is it.
        let i = (0..lattice.len())
            .rev()
            .find(|&i| p_part(lattice.order_of(i), p) == 1)
            .expect("the trivial subgroup qualifies");
        return Ok(lattice.get(i).clone());
    }
    // Beyond the lattice cap: join the normal closures of elements that generate
    // p′-normal subgroups.
    let mut current = g.sibling(Vec::new())?;
    for x in g.elements()? {
        if current.has(&x) || x.order() % p == 0 {
            continue;
        }
        let closure = normal_closure_of(g, std::slice::from_ref(&x))?;
        if p_part(closure.order(), p) == 1 {
            let mut gens = current.generators().to_vec();
            gens.extend(closure.generators().iter().cloned());
            current = g.sibling(gens)?;
        }
    }
    Ok(Subgroup::new_unchecked(g, current))
}

/// `O^p(G)`: the normal closure of all Sylow q-subgroups for primes `q ≠ p`.
pub fn o_upper_p(g: &PermGroup, p: u64) -> Result<Subgroup> {
    require_prime(p)?;
    let mut seeds = Vec::new();
    for q in pi_of(g.order()).primes() {
        if q != p {
            seeds.extend(sylow_subgroup(g, q)?.generators().iter().cloned());
        }
    }
    Ok(Subgroup::new_unchecked(g, normal_closure_of(g, &seeds)?))
}

/// `Z_U(G)`: the join of the normal subgroups all of whose chief factors below them have
/// prime order.
pub fn u_hypercenter(g: &PermGroup) -> Result<Subgroup> {
    let lattice = normal_lattice(g)?;
    let qualifies: Vec<bool> = (0..lattice.len())
        .map(|h| {
            lattice.covers().iter().all(|&(i, j)| {
                !lattice.is_below(j, h)
                    || is_prime((lattice.order_of(j) / lattice.order_of(i)) as u64)
            })
        })
        .collect();
    // Qualifying subgroups are closed under joins, so the largest one contains the rest.
    let top = (0..lattice.len())
        .rev()
        .find(|&h| qualifies[h])
        .expect("the trivial subgroup qualifies");
    debug_assert!((0..lattice.len()).all(|h| !qualifies[h] || lattice.is_below(h, top)));
    Ok(lattice.get(top).clone())
}

/// Chief-factor orders of `G/N`, given by the covers of the normal lattice of `G` above
/// `N`. `n` is a lattice position.
fn factor_orders_above(lattice: &NormalLattice, n: usize) -> impl Iterator<Item = u128> + '_ {
    lattice
        .covers()
        .iter()
        .filter(move |&&(i, _)| lattice.is_below(n, i))
        .map(|&(i, j)| lattice.order_of(j) / lattice.order_of(i))
}

fn soluble_orders(mut orders: impl Iterator<Item = u128>, p: u64) -> bool {
    orders.all(|k| is_power_of(k, p) || p_part(k, p) == 1)
}

fn supersoluble_orders(mut orders: impl Iterator<Item = u128>, p: u64) -> bool {
    orders.all(|k| p_part(k, p) == 1 || k == p as u128)
}

fn position(lattice: &NormalLattice, n: &Subgroup) -> Result<usize> {
    lattice.find(n).ok_or(GroupError::NotNormal)
}

/// Every chief factor is a p-group or a p′-group.
pub fn is_p_soluble(g: &PermGroup, p: u64) -> Result<bool> {
    quotient_is_p_soluble(g, &Subgroup::trivial(g), p)
}

/// p-soluble, and every chief factor of order divisible by p has order p.
pub fn is_p_supersoluble(g: &PermGroup, p: u64) -> Result<bool> {
    quotient_is_p_supersoluble(g, &Subgroup::trivial(g), p)
}

/// A normal p-complement exists: `|O_{p'}(G)|` is the p′-part of `|G|`.
pub fn is_p_nilpotent(g: &PermGroup, p: u64) -> Result<bool> {
    let complement = o_p_prime(g, p)?;
    Ok(complement.order() == g.order() / p_part(g.order(), p))
}

/// `G/N` is p-soluble, read off the normal lattice of `G`.
pub fn quotient_is_p_soluble(g: &PermGroup, n: &Subgroup, p: u64) -> Result<bool> {
    require_prime(p)?;
    let lattice = normal_lattice(g)?;
    let n = position(&lattice, n)?;
    Ok(soluble_orders(factor_orders_above(&lattice, n), p))
}

/// `G/N` is p-supersoluble.
pub fn quotient_is_p_supersoluble(g: &PermGroup, n: &Subgroup, p: u64) -> Result<bool> {
    require_prime(p)?;
    let lattice = normal_lattice(g)?;
    let n = position(&lattice, n)?;
    Ok(soluble_orders(factor_orders_above(&lattice, n), p)
        && supersoluble_orders(factor_orders_above(&lattice, n), p))
}

/// `G/N` is p-nilpotent: some normal `M ≥ N` has `M/N` a p′-group of p-power index.
pub fn quotient_is_p_nilpotent(g: &PermGroup, n: &Subgroup, p: u64) -> Result<bool> {
    require_prime(p)?;
    let lattice = normal_lattice(g)?;
    let n = position(&lattice, n)?;
    let quotient = g.order() / lattice.order_of(n);
    let target = quotient / p_part(quotient, p);
    Ok((0..lattice.len())
        .any(|m| lattice.is_below(n, m) && lattice.order_of(m) / lattice.order_of(n) == target))
}
