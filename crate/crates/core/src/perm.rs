//! Permutations of `{0, .., d-1}` stored as image arrays.
//!
//! Products follow the right-action convention used throughout the crate:
//! `p * q` applies `p` first, then `q`, so `i^(p*q) = (i^p)^q`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use crate::factored::FactoredInteger;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, Error> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::NotAPermutation(format!("point {x} out of range")));
                }
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Points moved by the permutation, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, j)| i != *j)
            .map(|(i, _)| i)
            .collect()
    }

    /// Cycle decomposition, omitting fixed points; each cycle starts at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Element order, the lcm of the cycle lengths.
    pub fn order(&self) -> FactoredInteger {
        self.cycles()
            .iter()
            .fold(FactoredInteger::one(), |acc, c| acc.lcm(&FactoredInteger::from_u64(c.len() as u64)))
    }

    /// `self^-1 * other * self`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        &(&self.inverse() * other) * self
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| other.images[a] == self.images[b])
    }

    /// Extends the permutation by fixing the points `degree..new_degree`.
    pub fn extend(&self, new_degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree()..new_degree);
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        Permutation {
            images: self.images.iter().map(|&i| rhs.images[i]).collect(),
        }
    }
}

impl Mul for Permutation {
    type Output = Permutation;

    fn mul(self, rhs: Permutation) -> Permutation {
        &self * &rhs
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
