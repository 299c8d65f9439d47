//! Permutations of `{0, …, n-1}`.
//!
//! Products are read left to right: `a * b` first applies `a`, then `b`, so
//! `i^(a*b) = b(a(i))`. This convention is used everywhere in the crate.

use std::fmt;
use std::ops::Mul;

use crate::error::{GroupError, Result};

/// Largest degree a [`Permutation`] can carry. Points are stored as `u16`.
pub const MAX_DEGREE: usize = u16::MAX as usize;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(GroupError::InvalidDegree(degree));
        }
        Ok(Self::identity_unchecked(degree))
    }

    pub(crate) fn identity_unchecked(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from its image list, checking that it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        if degree == 0 || degree > MAX_DEGREE {
            return Err(GroupError::InvalidDegree(degree));
        }
        let mut seen = vec![false; degree];
        for &image in &images {
            if image >= degree {
                return Err(GroupError::PointOutOfRange {
                    point: image,
                    degree,
                });
            }
            if std::mem::replace(&mut seen[image], true) {
                return Err(GroupError::NotBijective(format!(
                    "point {image} is hit twice"
                )));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u16>) -> Self {
        debug_assert!(!images.is_empty());
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles. A point may appear in at most one cycle.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = Self::identity(degree)?
            .images
            .iter()
            .map(|&i| i as usize)
            .collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &point in cycle {
                if point >= degree {
                    return Err(GroupError::PointOutOfRange { point, degree });
                }
                if std::mem::replace(&mut used[point], true) {
                    return Err(GroupError::NotBijective(format!(
                        "point {point} appears in more than one cycle"
                    )));
                }
            }
            for (k, &point) in cycle.iter().enumerate() {
                images[point] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`. `()` and the empty string are the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(GroupError::CycleSyntax(format!("expected '(' at {rest:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(GroupError::CycleSyntax(format!(
                    "unclosed cycle in {text:?}"
                )));
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(GroupError::CycleSyntax(format!("nested '(' in {text:?}")));
            }
            let cycle = inner
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|tok| !tok.is_empty())
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| GroupError::CycleSyntax(format!("bad point {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// First point moved by the permutation, if any.
    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i != x as usize)
            .map(|(i, _)| i)
    }

    /// Checked left-to-right product: the result maps `i` to `other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Permutation { images }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images }
    }

    /// `self⁻¹ · other⁻¹ · self · other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        &(&self.inverse() * &other.inverse()) * &(self * other)
    }

    pub fn pow(&self, exponent: u64) -> Permutation {
        let mut result = Self::identity_unchecked(self.degree());
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Nontrivial cycles, each starting at its smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Sign parity: true for even permutations.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Left-to-right product. Panics on a degree mismatch; use [`Permutation::compose`]
    /// for a checked product.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        self.compose_unchecked(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

pub fn identity(degree: usize) -> Result<Permutation> {
    Permutation::identity(degree)
}

pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.compose(b)
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
