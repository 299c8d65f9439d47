//! Standard small groups as permutation groups, and direct products on disjoint points.

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::structure::{is_prime, pi_of};

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Result<Permutation> {
    let points: Vec<usize> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[points])
}

/// Cyclic group of order `n`, as a product of disjoint prime-power cycles (degree is the
/// sum of the prime-power factors of `n`, or 1 for `n = 1`).
pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(GroupError::InvalidDegree(n));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1)?.labeled("C1"));
    }
    let mut lengths = Vec::new();
    for p in pi_of(n as u128).primes() {
        let mut q = 1;
        while n.is_multiple_of(q * p as usize) {
            q *= p as usize;
        }
        lengths.push(q);
    }
    let degree: usize = lengths.iter().sum();
    let mut start = 0;
    let mut cycles = Vec::new();
    for len in lengths {
        cycles.push((start..start + len).collect::<Vec<_>>());
        start += len;
    }
    let g = Permutation::from_cycles(degree, &cycles)?;
    Ok(PermGroup::new(degree, vec![g])?.labeled(format!("C{n}")))
}

/// Dihedral group of order `2n` acting on the `n` vertices of a polygon, `n ≥ 3`.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(GroupError::InvalidDegree(n));
    }
    let rotation = cycle(n, 0..n)?;
    let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
    Ok(PermGroup::new(n, vec![rotation, reflection])?.labeled(format!("D{}", 2 * n)))
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(GroupError::InvalidDegree(n));
    }
    let gens = if n == 1 {
        Vec::new()
    } else if n == 2 {
        vec![cycle(2, [0, 1])?]
    } else {
        vec![cycle(n, 0..n)?, cycle(n, [0, 1])?]
    };
    Ok(PermGroup::new(n, gens)?.labeled(format!("S{n}")))
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(GroupError::InvalidDegree(n));
    }
    let gens = if n < 3 {
        Vec::new()
    } else if n == 3 {
        vec![cycle(3, [0, 1, 2])?]
    } else if n % 2 == 1 {
        vec![cycle(n, [0, 1, 2])?, cycle(n, 0..n)?]
    } else {
        vec![cycle(n, [0, 1, 2])?, cycle(n, 1..n)?]
    };
    Ok(PermGroup::new(n, gens)?.labeled(format!("A{n}")))
}

/// `(C_p)^k` on `k` disjoint `p`-cycles.
pub fn elementary_abelian(p: u64, k: usize) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if k == 0 {
        return Ok(PermGroup::trivial(1)?.labeled("C1"));
    }
    let p = p as usize;
    let degree = p * k;
    let gens = (0..k)
        .map(|i| cycle(degree, i * p..(i + 1) * p))
        .collect::<Result<Vec<_>>>()?;
    let label = if k == 1 {
        format!("C{p}")
    } else {
        format!("C{p}^{k}")
    };
    Ok(PermGroup::new(degree, gens)?.labeled(label))
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion() -> Result<PermGroup> {
    let i = Permutation::parse_cycles(8, "(0 1 2 3)(4 5 6 7)")?;
    let j = Permutation::parse_cycles(8, "(0 4 2 6)(1 7 3 5)")?;
    Ok(PermGroup::new(8, vec![i, j])?.labeled("Q8"))
}

/// `A × B` acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let degree = a.degree() + b.degree();
    let shift = a.degree();
    let mut gens = Vec::new();
    for x in a.generators() {
        let images = x.images().chain(shift..degree).collect();
        gens.push(Permutation::from_images(images)?);
    }
    for y in b.generators() {
        let images = (0..shift).chain(y.images().map(|i| i + shift)).collect();
        gens.push(Permutation::from_images(images)?);
    }
    let label = format!("{}x{}", a.label().unwrap_or("G"), b.label().unwrap_or("G"));
    Ok(PermGroup::with_limits(degree, gens, a.limits())?.labeled(label))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_labels() {
        let c12 = cyclic(12).unwrap();
        assert_eq!((c12.order(), c12.degree()), (12, 7));
        assert_eq!(c12.label(), Some("C12"));
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(cyclic(7).unwrap().degree(), 7);

        let d8 = dihedral(4).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.label(), Some("D8"));
        assert!(!d8.is_abelian());
        assert_eq!(dihedral(6).unwrap().order(), 12);

        for (n, order) in [(1, 1), (2, 2), (3, 6), (4, 24), (5, 120)] {
            assert_eq!(symmetric(n).unwrap().order(), order);
        }
        for (n, order) in [(3, 3), (4, 12), (5, 60), (6, 360)] {
            assert_eq!(alternating(n).unwrap().order(), order);
        }
        assert_eq!(elementary_abelian(2, 3).unwrap().order(), 8);
        assert_eq!(elementary_abelian(3, 2).unwrap().label(), Some("C3^2"));
        assert_eq!(quaternion().unwrap().order(), 8);
    }

    #[test]
    fn products() {
        let g = direct_product(&cyclic(5).unwrap(), &alternating(5).unwrap()).unwrap();
        assert_eq!(g.order(), 300);
        assert_eq!(g.degree(), 10);
        assert_eq!(g.label(), Some("C5xA5"));
        let h = direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(h.order(), 12);
        assert!(!h.is_abelian());
    }

    #[test]
    fn quaternion_has_a_unique_involution() {
        let q8 = quaternion().unwrap();
        let involutions = q8.elements().unwrap().filter(|x| x.order() == 2).count();
        assert_eq!(involutions, 1);
    }
}
