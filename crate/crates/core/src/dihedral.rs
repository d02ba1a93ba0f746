//! Exact arithmetic in `D_2n = <a, b | a^n = b^2 = 1, a^b = a^-1>`.
//!
//! An element is the word `a^rot b^refl`. Elements are written `r<i>` for
//! `a^i` and `f<i>` for `a^i b`; both the printer and the parser use that
//! syntax. The global vertex indexing maps `a^i` to `i` and `a^i b` to `n + i`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::factored::gcd;
use crate::perm::Permutation;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    /// Exponent of `a`, reduced into `[0, n)` by [`DihedralGroup::element`].
    pub rot: usize,
    /// Whether the word ends in `b`.
    pub refl: bool,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement { rot: 0, refl: false };

    pub const fn rotation(rot: usize) -> Self {
        DihedralElement { rot, refl: false }
    }

    pub const fn reflection(rot: usize) -> Self {
        DihedralElement { rot, refl: true }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.refl { 'f' } else { 'r' };
        write!(f, "{tag}{}", self.rot)
    }
}

/// Parses `r<i>` / `f<i>`; the exponent is not reduced (that needs `n`).
impl FromStr for DihedralElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let refl = match s.as_bytes().first() {
            Some(b'r') => false,
            Some(b'f') => true,
            _ => return Err(Error::ElementSyntax(s.to_string())),
        };
        let digits = &s[1..];
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(Error::ElementSyntax(s.to_string()));
        }
        let rot = digits
            .parse()
            .map_err(|_| Error::ElementSyntax(s.to_string()))?;
        Ok(DihedralElement { rot, refl })
    }
}

/// The dihedral group of order `2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralGroup {
    n: usize,
}

impl DihedralGroup {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n < 2 || 2 * n > crate::MAX_VERTICES {
            return Err(Error::InvalidOrder { n });
        }
        Ok(DihedralGroup { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        2 * self.n
    }

    /// `a^rot b^refl` with `rot` reduced mod `n`.
    pub fn element(&self, rot: i64, refl: bool) -> DihedralElement {
        DihedralElement {
            rot: rot.rem_euclid(self.n as i64) as usize,
            refl,
        }
    }

    pub fn a(&self) -> DihedralElement {
        self.element(1, false)
    }

    pub fn b(&self) -> DihedralElement {
        DihedralElement::reflection(0)
    }

    /// Rejects elements whose exponent is not already reduced.
    pub fn check(&self, x: DihedralElement) -> Result<DihedralElement, Error> {
        if x.rot < self.n {
            Ok(x)
        } else {
            Err(Error::ElementOutOfRange(x.to_string(), 2 * self.n))
        }
    }

    /// Parses `r<i>`/`f<i>` and checks the exponent is in range.
    pub fn parse(&self, token: &str) -> Result<DihedralElement, Error> {
        self.check(token.parse()?)
    }

    pub fn mul(&self, x: DihedralElement, y: DihedralElement) -> DihedralElement {
        // a^i b^e a^j b^f = a^(i + (-1)^e j) b^(e + f)
        let rot = if x.refl {
            (x.rot + self.n - y.rot) % self.n
        } else {
            (x.rot + y.rot) % self.n
        };
        DihedralElement {
            rot,
            refl: x.refl ^ y.refl,
        }
    }

    pub fn inverse(&self, x: DihedralElement) -> DihedralElement {
        if x.refl {
            x
        } else {
            DihedralElement::rotation((self.n - x.rot) % self.n)
        }
    }

    /// `g^-1 x g`.
    pub fn conjugate(&self, x: DihedralElement, g: DihedralElement) -> DihedralElement {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    pub fn pow(&self, x: DihedralElement, e: usize) -> DihedralElement {
        if x.refl {
            if e % 2 == 0 {
                DihedralElement::IDENTITY
            } else {
                x
            }
        } else {
            DihedralElement::rotation((x.rot * (e % self.n)) % self.n)
        }
    }

    /// Smallest `m >= 1` with `x^m = 1`.
    pub fn element_order(&self, x: DihedralElement) -> usize {
        if x.refl {
            2
        } else {
            self.n / gcd(x.rot, self.n)
        }
    }

    pub fn elements(self) -> impl Iterator<Item = DihedralElement> {
        (0..2 * self.n).map(move |i| self.from_index(i))
    }

    /// Vertex index: `a^i -> i`, `a^i b -> n + i`.
    #[inline]
    pub fn index(&self, x: DihedralElement) -> usize {
        x.rot + if x.refl { self.n } else { 0 }
    }

    #[inline]
    pub fn from_index(&self, i: usize) -> DihedralElement {
        debug_assert!(i < 2 * self.n);
        DihedralElement {
            rot: i % self.n,
            refl: i >= self.n,
        }
    }

    /// Conjugacy class of `x`, from the closed form for dihedral groups.
    pub fn conjugacy_class(&self, x: DihedralElement) -> ConjClass {
        let n = self.n;
        let mut members: Vec<DihedralElement> = if !x.refl {
            let inv = (n - x.rot) % n;
            let mut v = alloc::vec![DihedralElement::rotation(x.rot)];
            if inv != x.rot {
                v.push(DihedralElement::rotation(inv));
            }
            v
        } else if n % 2 == 1 {
            (0..n).map(DihedralElement::reflection).collect()
        } else {
            (0..n)
                .filter(|j| j % 2 == x.rot % 2)
                .map(DihedralElement::reflection)
                .collect()
        };
        members.sort();
        ConjClass {
            representative: x,
            members,
        }
    }

    /// All conjugacy classes of non-identity elements, ordered by their
    /// smallest member.
    pub fn nonidentity_classes(&self) -> Vec<ConjClass> {
        let mut seen = alloc::vec![false; self.order()];
        seen[0] = true;
        let mut out = Vec::new();
        for x in self.elements() {
            if seen[self.index(x)] {
                continue;
            }
            let class = self.conjugacy_class(x);
            for m in &class.members {
                seen[self.index(*m)] = true;
            }
            out.push(class);
        }
        out
    }

    /// `R(g): x -> x g` on the vertex indexing.
    pub fn right_regular(&self, g: DihedralElement) -> Permutation {
        Permutation::from_images_unchecked(
            self.elements().map(|x| self.index(self.mul(x, g))).collect(),
        )
    }

    /// `L(g): x -> g^-1 x` on the vertex indexing.
    pub fn left_regular(&self, g: DihedralElement) -> Permutation {
        let gi = self.inverse(g);
        Permutation::from_images_unchecked(
            self.elements().map(|x| self.index(self.mul(gi, x))).collect(),
        )
    }

    /// The inversion map `x -> x^-1` as a vertex permutation.
    pub fn inversion_map(&self) -> Permutation {
        Permutation::from_images_unchecked(
            self.elements().map(|x| self.index(self.inverse(x))).collect(),
        )
    }

    /// All `n * phi(n)` automorphisms `a -> a^j, b -> a^i b`.
    pub fn all_group_automorphisms(&self) -> Result<Vec<GroupAutomorphism>, Error> {
        if self.n == 2 {
            return Err(Error::DegenerateDihedral);
        }
        let mut out = Vec::new();
        for exponent in (1..self.n).filter(|&j| gcd(j, self.n) == 1) {
            for offset in 0..self.n {
                out.push(GroupAutomorphism { offset, exponent });
            }
        }
        Ok(out)
    }

    /// The automorphism `a -> a^j, b -> a^i b`, validated.
    pub fn automorphism(&self, offset: i64, exponent: i64) -> Result<GroupAutomorphism, Error> {
        if self.n == 2 {
            return Err(Error::DegenerateDihedral);
        }
        let exponent = exponent.rem_euclid(self.n as i64) as usize;
        if gcd(exponent, self.n) != 1 {
            return Err(Error::InvalidFamilyParameter {
                family: "automorphism",
                reason: format!("exponent {exponent} is not a unit mod {}", self.n),
            });
        }
        Ok(GroupAutomorphism {
            offset: offset.rem_euclid(self.n as i64) as usize,
            exponent,
        })
    }

    /// `theta_{a^i}: a -> a, b -> a^i b`.
    pub fn theta(&self, i: i64) -> Result<GroupAutomorphism, Error> {
        self.automorphism(i, 1)
    }

    /// `tau_{a^j}: a -> a^j, b -> b`.
    pub fn tau(&self, j: i64) -> Result<GroupAutomorphism, Error> {
        self.automorphism(0, j)
    }

    pub fn apply_automorphism(&self, phi: GroupAutomorphism, x: DihedralElement) -> DihedralElement {
        // (a^r b^e)^phi = a^(r j) (a^i b)^e
        let rot = x.rot * phi.exponent + if x.refl { phi.offset } else { 0 };
        DihedralElement {
            rot: rot % self.n,
            refl: x.refl,
        }
    }

    /// `x -> x^phi` on the vertex indexing.
    pub fn automorphism_permutation(&self, phi: GroupAutomorphism) -> Permutation {
        Permutation::from_images_unchecked(
            self.elements()
                .map(|x| self.index(self.apply_automorphism(phi, x)))
                .collect(),
        )
    }

    /// `phi` followed by `psi`.
    pub fn compose(&self, phi: GroupAutomorphism, psi: GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism {
            offset: (phi.offset * psi.exponent + psi.offset) % self.n,
            exponent: (phi.exponent * psi.exponent) % self.n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: DihedralElement,
    /// Sorted ascending.
    pub members: Vec<DihedralElement>,
}

impl ConjClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: DihedralElement) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// The automorphism `a -> a^exponent`, `b -> a^offset b` of `D_2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    pub offset: usize,
    pub exponent: usize,
}

impl GroupAutomorphism {
    pub const IDENTITY: GroupAutomorphism = GroupAutomorphism {
        offset: 0,
        exponent: 1,
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;
    use proptest::prelude::*;

    fn el(rot: usize, refl: bool) -> DihedralElement {
        DihedralElement { rot, refl }
    }

    /// Faithful model of `D_2n` as affine maps of `Z_n`: `a` is `t -> t + 1`,
    /// `b` is `t -> -t`, and `a^r b^e` is `t -> (-1)^e t + r`. Words multiply
    /// as function composition, `(xy)(t) = x(y(t))`.
    fn affine(x: DihedralElement, n: usize) -> (i64, i64) {
        (if x.refl { -1 } else { 1 }, (x.rot % n) as i64)
    }

    fn compose_affine(x: (i64, i64), y: (i64, i64), n: usize) -> (i64, i64) {
        (x.0 * y.0, (x.0 * y.1 + x.1).rem_euclid(n as i64))
    }

    #[test]
    fn multiplication_matches_affine_model() {
        for n in 2..16 {
            let g = DihedralGroup::new(n).unwrap();
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(
                        affine(g.mul(x, y), n),
                        compose_affine(affine(x, n), affine(y, n), n),
                        "n={n} x={x} y={y}"
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let g5 = DihedralGroup::new(5).unwrap();
        assert_eq!(g5.inverse(el(2, false)), el(3, false));
        assert_eq!(g5.inverse(el(2, true)), el(2, true));
        let g12 = DihedralGroup::new(12).unwrap();
        assert_eq!(g12.inverse(el(7, false)), el(5, false));
    }

    #[test]
    fn class_examples() {
        let g5 = DihedralGroup::new(5).unwrap();
        let c = g5.conjugacy_class(el(1, true));
        assert_eq!(c.members, (0..5).map(DihedralElement::reflection).collect::<Vec<_>>());
        let g6 = DihedralGroup::new(6).unwrap();
        assert_eq!(g6.conjugacy_class(el(3, false)).members, vec![el(3, false)]);
        assert_eq!(
            g6.conjugacy_class(el(1, false)).members,
            vec![el(1, false), el(5, false)]
        );
        assert_eq!(g6.conjugacy_class(DihedralElement::IDENTITY).members, vec![DihedralElement::IDENTITY]);
    }

    /// Brute-force class: `{g^-1 x g : g in G}`.
    fn brute_class(g: &DihedralGroup, x: DihedralElement) -> Vec<DihedralElement> {
        let set: BTreeSet<_> = g.elements().map(|h| g.conjugate(x, h)).collect();
        set.into_iter().collect()
    }

    #[test]
    fn closed_form_classes_match_conjugation_sweep() {
        for n in 2..=40 {
            let g = DihedralGroup::new(n).unwrap();
            let mut covered = 0;
            for x in g.elements() {
                assert_eq!(g.conjugacy_class(x).members, brute_class(&g, x), "n={n} x={x}");
            }
            for c in g.nonidentity_classes() {
                covered += c.len();
            }
            assert_eq!(covered + 1, 2 * n, "classes partition G for n={n}");
        }
    }

    #[test]
    fn class_sizes_follow_parity_of_n() {
        for n in 2..=40 {
            let g = DihedralGroup::new(n).unwrap();
            let refl: Vec<_> = g.nonidentity_classes().into_iter().filter(|c| c.representative.refl).collect();
            if n % 2 == 1 {
                assert_eq!(refl.len(), 1);
                assert_eq!(refl[0].len(), n);
            } else {
                assert_eq!(g.conjugacy_class(el(n / 2, false)).len(), 1);
                assert_eq!(refl.len(), 2);
                assert!(refl.iter().all(|c| c.len() == n / 2));
            }
        }
    }

    #[test]
    fn element_orders() {
        let g = DihedralGroup::new(30).unwrap();
        assert_eq!(g.element_order(el(5, false)), 6);
        assert_eq!(g.element_order(el(1, false)), 30);
        assert_eq!(g.element_order(el(7, true)), 2);
        assert_eq!(g.element_order(DihedralElement::IDENTITY), 1);
        for x in g.elements() {
            let m = g.element_order(x);
            assert!(g.pow(x, m).is_identity());
            assert!((1..m).all(|e| !g.pow(x, e).is_identity()));
        }
    }

    #[test]
    fn regular_representations() {
        let g = DihedralGroup::new(3).unwrap();
        assert!(g.right_regular(DihedralElement::IDENTITY).is_identity());
        let rs: BTreeSet<_> = g.elements().map(|x| g.right_regular(x)).collect();
        assert_eq!(rs.len(), 6);
        for x in g.elements() {
            for y in g.elements() {
                assert!(rs.contains(&(&g.right_regular(x) * &g.right_regular(y))));
                assert_eq!(&g.right_regular(x) * &g.right_regular(y), g.right_regular(g.mul(x, y)));
                assert_eq!(&g.left_regular(x) * &g.left_regular(y), g.left_regular(g.mul(x, y)));
                assert!(g.right_regular(x).commutes_with(&g.left_regular(y)));
            }
            if !x.is_identity() {
                assert!(g.right_regular(x).support().len() == 6);
                assert!(g.left_regular(x).support().len() == 6);
            }
        }
        // acting regularly: exactly one element maps 0 to any given point
        for v in 0..6 {
            assert_eq!(rs.iter().filter(|r| r.apply(0) == v).count(), 1);
        }
    }

    #[test]
    fn left_times_right_is_conjugation() {
        let g = DihedralGroup::new(6).unwrap();
        let a = g.a();
        let lr = &g.left_regular(a) * &g.right_regular(a);
        assert_eq!(lr.apply(0), 0);
        for x in g.elements() {
            assert_eq!(g.from_index(lr.apply(g.index(x))), g.conjugate(x, a));
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(DihedralGroup::new(4).unwrap().all_group_automorphisms().unwrap().len(), 8);
        assert_eq!(DihedralGroup::new(12).unwrap().all_group_automorphisms().unwrap().len(), 48);
        assert_eq!(
            DihedralGroup::new(2).unwrap().all_group_automorphisms(),
            Err(Error::DegenerateDihedral)
        );
    }

    #[test]
    fn theta_then_tau() {
        let g = DihedralGroup::new(12).unwrap();
        let phi = g.compose(g.theta(1).unwrap(), g.tau(5).unwrap());
        // oracle: push the generators through both maps by hand
        let b_img = g.apply_automorphism(g.tau(5).unwrap(), g.apply_automorphism(g.theta(1).unwrap(), g.b()));
        assert_eq!(b_img, el(5, true));
        assert_eq!(g.apply_automorphism(phi, g.b()), el(5, true));
    }

    #[test]
    fn automorphisms_are_homomorphisms_and_closed() {
        for n in [3, 4, 6, 8, 9] {
            let g = DihedralGroup::new(n).unwrap();
            let all = g.all_group_automorphisms().unwrap();
            let set: BTreeSet<_> = all.iter().copied().collect();
            for &phi in &all {
                for x in g.elements() {
                    assert_eq!(g.apply_automorphism(phi, x).refl, x.refl, "rotations are fixed setwise");
                    for y in g.elements() {
                        assert_eq!(
                            g.apply_automorphism(phi, g.mul(x, y)),
                            g.mul(g.apply_automorphism(phi, x), g.apply_automorphism(phi, y))
                        );
                    }
                }
                for &psi in &all {
                    let c = g.compose(phi, psi);
                    assert!(set.contains(&c));
                    for x in g.elements() {
                        assert_eq!(
                            g.apply_automorphism(c, x),
                            g.apply_automorphism(psi, g.apply_automorphism(phi, x))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn token_round_trip() {
        let g = DihedralGroup::new(12).unwrap();
        for x in g.elements() {
            assert_eq!(g.parse(&x.to_string()).unwrap(), x);
        }
        assert!(g.parse("r12").is_err());
        assert!("x3".parse::<DihedralElement>().is_err());
        assert!("r".parse::<DihedralElement>().is_err());
        assert!("f-1".parse::<DihedralElement>().is_err());
    }

    proptest! {
        #[test]
        fn group_axioms(n in 2usize..30, i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
            let g = DihedralGroup::new(n).unwrap();
            let x = g.from_index(i % (2 * n));
            let y = g.from_index(j % (2 * n));
            let z = g.from_index(k % (2 * n));
            prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
            prop_assert!(g.mul(x, g.inverse(x)).is_identity());
            prop_assert_eq!(g.mul(x, DihedralElement::IDENTITY), x);
            prop_assert_eq!(g.mul(DihedralElement::IDENTITY, x), x);
        }
    }
}
