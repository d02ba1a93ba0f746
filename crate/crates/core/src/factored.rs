//! Exact positive integers kept in prime-factored form.
//!
//! Automorphism group orders in this crate routinely exceed `u128`
//! (`|Aut| = 2^53 3^26 5^13 7^12` for one of the `D_84` examples), and every
//! order arises as a product of small orbit lengths, so the factored form is
//! both exact and cheap.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Mul, MulAssign};

/// A positive integer as a map `prime -> exponent`. The empty map is 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u32>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    /// Factors `n` by trial division.
    ///
    /// # Panics
    ///
    /// If `n == 0`.
    pub fn from_u64(mut n: u64) -> Self {
        assert!(n != 0, "zero has no factorization");
        let mut factors = BTreeMap::new();
        let mut p = 2u64;
        while p.saturating_mul(p) <= n {
            while n % p == 0 {
                *factors.entry(p).or_insert(0) += 1;
                n /= p;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if n > 1 {
            *factors.entry(n).or_insert(0) += 1;
        }
        FactoredInteger { factors }
    }

    /// Builds from explicit `(prime, exponent)` pairs. Zero exponents are dropped.
    ///
    /// # Panics
    ///
    /// If some base is not prime.
    pub fn from_prime_powers<I: IntoIterator<Item = (u64, u32)>>(pairs: I) -> Self {
        let mut out = Self::one();
        for (p, e) in pairs {
            assert!(is_prime(p), "{p} is not prime");
            if e > 0 {
                *out.factors.entry(p).or_insert(0) += e;
            }
        }
        out
    }

    pub fn factorial(n: u64) -> Self {
        let mut out = Self::one();
        for i in 2..=n {
            out *= Self::from_u64(i);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        FactoredInteger {
            factors: self
                .factors
                .iter()
                .filter(|_| e > 0)
                .map(|(&p, &k)| (p, k * e))
                .collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p` (zero when `p` does not divide).
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn prime_powers(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.factors.iter().all(|(p, &e)| other.exponent(*p) >= e)
    }

    /// `self / divisor` when the division is exact.
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        if !divisor.divides(self) {
            return None;
        }
        let mut factors = self.factors.clone();
        for (p, e) in divisor.prime_powers() {
            let slot = factors.get_mut(&p).expect("divisibility checked");
            *slot -= e;
            if *slot == 0 {
                factors.remove(&p);
            }
        }
        Some(FactoredInteger { factors })
    }

    /// The value as a `u128`, if it fits.
    pub fn to_u128(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for (p, e) in self.prime_powers() {
            for _ in 0..e {
                acc = acc.checked_mul(p as u128)?;
            }
        }
        Some(acc)
    }

    /// Least common multiple.
    pub fn lcm(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (p, e) in other.prime_powers() {
            let slot = factors.entry(p).or_insert(0);
            *slot = (*slot).max(e);
        }
        FactoredInteger { factors }
    }
}

impl From<u64> for FactoredInteger {
    fn from(n: u64) -> Self {
        Self::from_u64(n)
    }
}

impl MulAssign<&FactoredInteger> for FactoredInteger {
    // exponents add when values multiply
    #[allow(clippy::suspicious_op_assign_impl)]
    fn mul_assign(&mut self, rhs: &FactoredInteger) {
        for (p, e) in rhs.prime_powers() {
            *self.factors.entry(p).or_insert(0) += e;
        }
    }
}

impl MulAssign for FactoredInteger {
    fn mul_assign(&mut self, rhs: FactoredInteger) {
        *self *= &rhs;
    }
}

impl Mul for &FactoredInteger {
    type Output = FactoredInteger;
    fn mul(self, rhs: &FactoredInteger) -> FactoredInteger {
        let mut out = self.clone();
        out *= rhs;
        out
    }
}

impl Mul for FactoredInteger {
    type Output = FactoredInteger;
    fn mul(mut self, rhs: FactoredInteger) -> FactoredInteger {
        self *= &rhs;
        self
    }
}

impl core::iter::Product for FactoredInteger {
    fn product<I: Iterator<Item = FactoredInteger>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

/// Renders as `2^17 * 3^2 * 5`; the empty product renders as `1`.
impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.prime_powers().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
