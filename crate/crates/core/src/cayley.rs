//! Connection sets and Cayley graphs on `D_2n`.
//!
//! `Cay(G, S)` has vertex set `G`, and `x ~ y` iff `y x^-1 in S`. Vertices use
//! the global indexing of [`DihedralGroup::index`], so every permutation in
//! the crate acts on the same labels.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use crate::dihedral::{DihedralElement, DihedralGroup, GroupAutomorphism};
use crate::factored::{gcd, is_prime};
use crate::graph::Graph;
use crate::perm::Permutation;
use crate::Error;

/// An identity-free, inverse-closed subset of `D_2n`.
///
/// Equality and hashing are by `(n, membership bitset)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectionSet {
    group: DihedralGroup,
    members: FixedBitSet,
}

impl ConnectionSet {
    /// Validates `elements` as a connection set.
    pub fn new(group: DihedralGroup, elements: &[DihedralElement]) -> Result<Self, Error> {
        let mut members = FixedBitSet::with_capacity(group.order());
        for &x in elements {
            members.insert(group.index(group.check(x)?));
        }
        let set = ConnectionSet { group, members };
        set.validate()?;
        Ok(set)
    }

    fn validate(&self) -> Result<(), Error> {
        if self.members.contains(0) {
            return Err(Error::IdentityInConnectionSet);
        }
        for x in self.elements() {
            let inv = self.group.inverse(x);
            if !self.contains(inv) {
                return Err(Error::NotInverseClosed(inv.to_string()));
            }
        }
        Ok(())
    }

    /// Inserts each element together with its inverse.
    pub fn raw(group: DihedralGroup, elements: &[DihedralElement]) -> Result<Self, Error> {
        let mut members = FixedBitSet::with_capacity(group.order());
        for &x in elements {
            let x = group.check(x)?;
            if x.is_identity() {
                return Err(Error::IdentityInConnectionSet);
            }
            members.insert(group.index(x));
            members.insert(group.index(group.inverse(x)));
        }
        Ok(ConnectionSet { group, members })
    }

    /// Union of `{s, s^-1}^G` over the representatives.
    pub fn from_class_reps(group: DihedralGroup, reps: &[DihedralElement]) -> Result<Self, Error> {
        let mut members = FixedBitSet::with_capacity(group.order());
        for &s in reps {
            let s = group.check(s)?;
            if s.is_identity() {
                return Err(Error::IdentityInConnectionSet);
            }
            for x in [s, group.inverse(s)] {
                for m in group.conjugacy_class(x).members {
                    members.insert(group.index(m));
                }
            }
        }
        Ok(ConnectionSet { group, members })
    }

    pub fn group(&self) -> DihedralGroup {
        self.group
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn contains(&self, x: DihedralElement) -> bool {
        x.rot < self.n() && self.members.contains(self.group.index(x))
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    /// Members in vertex-index order.
    pub fn elements(&self) -> impl Iterator<Item = DihedralElement> + '_ {
        self.members.ones().map(|i| self.group.from_index(i))
    }

    pub fn union(&self, other: &ConnectionSet) -> ConnectionSet {
        assert_eq!(self.group, other.group);
        let mut members = self.members.clone();
        members.union_with(&other.members);
        ConnectionSet {
            group: self.group,
            members,
        }
    }

    /// Closed under conjugation by `a` and by `b` (hence by all of `G`).
    pub fn is_inner_automorphic(&self) -> bool {
        let g = self.group;
        self.elements()
            .all(|x| self.contains(g.conjugate(x, g.a())) && self.contains(g.conjugate(x, g.b())))
    }

    /// `<S> = G`, by closing `{1}` under right multiplication by `S`.
    pub fn is_connected(&self) -> bool {
        self.generated_subgroup().len() == self.group.order()
    }

    /// Elements of `<S>`, sorted by vertex index.
    pub fn generated_subgroup(&self) -> Vec<DihedralElement> {
        let g = self.group;
        let gens: Vec<_> = self.elements().collect();
        let mut seen = FixedBitSet::with_capacity(g.order());
        seen.insert(0);
        let mut stack = alloc::vec![DihedralElement::IDENTITY];
        while let Some(x) = stack.pop() {
            for &s in &gens {
                let y = g.mul(x, s);
                let i = g.index(y);
                if !seen.put(i) {
                    stack.push(y);
                }
            }
        }
        seen.ones().map(|i| g.from_index(i)).collect()
    }

    /// `H = G \ S` when `H` is a subgroup (the `S = G \ H` shape).
    pub fn complement_subgroup(&self) -> Option<Vec<DihedralElement>> {
        let g = self.group;
        let h: Vec<_> = g.elements().filter(|x| !self.contains(*x)).collect();
        let closed = h
            .iter()
            .all(|&x| h.iter().all(|&y| !self.contains(g.mul(x, g.inverse(y)))));
        closed.then_some(h)
    }

    /// `S^phi`.
    pub fn image(&self, phi: GroupAutomorphism) -> ConnectionSet {
        let mut members = FixedBitSet::with_capacity(self.group.order());
        for x in self.elements() {
            members.insert(self.group.index(self.group.apply_automorphism(phi, x)));
        }
        ConnectionSet {
            group: self.group,
            members,
        }
    }

    /// The automorphisms of `G` fixing `S` setwise.
    pub fn automorphism_stabilizer(&self) -> Result<Vec<GroupAutomorphism>, Error> {
        Ok(self
            .group
            .all_group_automorphisms()?
            .into_iter()
            .filter(|&phi| self.image(phi) == *self)
            .collect())
    }

    /// `S ∩ <a^2> a`, the odd-exponent rotations in `S`.
    pub fn odd_rotations(&self) -> Vec<DihedralElement> {
        self.elements().filter(|x| !x.refl && x.rot % 2 == 1).collect()
    }

    pub fn tokens(&self) -> Vec<String> {
        self.elements().map(|x| x.to_string()).collect()
    }
}

impl fmt::Debug for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConnectionSet(n={}, {{", self.n())?;
        for (i, x) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("})")
    }
}

/// Every nonempty union of non-identity conjugacy classes of `D_2n`, in
/// increasing order of the class bitmask. These are exactly the class-closed
/// connection sets (dihedral classes are inverse-closed).
pub fn class_unions(group: DihedralGroup) -> Vec<ConnectionSet> {
    let classes = group.nonidentity_classes();
    assert!(classes.len() < 24, "too many classes to enumerate");
    (1u32..(1 << classes.len()))
        .map(|mask| {
            let mut members = FixedBitSet::with_capacity(group.order());
            for (i, c) in classes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for m in &c.members {
                        members.insert(group.index(*m));
                    }
                }
            }
            ConnectionSet { group, members }
        })
        .collect()
}

/// The minimal inverse-closed pieces `{x, x^-1}`, `x != 1`, ordered by the
/// smaller vertex index. Inverse-closed sets are exactly unions of these.
pub fn inverse_pairs(group: DihedralGroup) -> Vec<Vec<DihedralElement>> {
    let mut out = Vec::new();
    for x in group.elements().skip(1) {
        let inv = group.inverse(x);
        if group.index(inv) < group.index(x) {
            continue;
        }
        if inv == x {
            out.push(alloc::vec![x]);
        } else {
            out.push(alloc::vec![x, inv]);
        }
    }
    out
}

/// Named connection-set families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `{a^i b}`: all reflections, `K_{n,n}`.
    KnnV1,
    /// `{a^(2i) b, a^(2i+1)}`, `n` even.
    KnnV2,
    /// `{a^(2i+1) b, a^(2i+1)}`, `n` even.
    KnnV3,
    /// `{a^(2i) b, a^(2j+1) : 2j+1 != k}`, `n = 2k`, `k >= 3` odd.
    KnnMinusMatchingV1,
    /// `{a^(2i+1) b, a^(2j+1) : 2j+1 != k}`, `n = 2k`, `k >= 3` odd.
    KnnMinusMatchingV2,
    /// `G \ {1}`.
    Complete,
    /// `G \ H` with `H` the subgroup of `<a>` of order `t`.
    Multipartite { t: usize },
    /// `(a^pi b)^G ∪ {a^i : (i, 4p) = 1}` in `D_8p`.
    UnitRotations { p: usize, pi: u8 },
    /// `(a^pi b)^G ∪ O_6 ∪ O_30` in `D_60`, `O_m` the rotations of order `m`.
    D60Orders6And30 { pi: u8 },
    /// `(a^pi b)^G ∪ O_10 ∪ O_30` in `D_60`.
    D60Orders10And30 { pi: u8 },
    /// `(a^pi b)^G ∪ O_6 ∪ O_42` in `D_84`.
    D84Orders6And42 { pi: u8 },
    /// `(a^pi b)^G ∪ O_14 ∪ O_42` in `D_84`.
    D84Orders14And42 { pi: u8 },
    /// `(a^pi b)^G ∪ Δ` with `Δ` odd-exponent rotations (closed under inverses).
    CaseV { pi: u8, delta: Vec<DihedralElement> },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::KnnV1 => "knn_v1",
            Family::KnnV2 => "knn_v2",
            Family::KnnV3 => "knn_v3",
            Family::KnnMinusMatchingV1 => "knn_minus_matching_v1",
            Family::KnnMinusMatchingV2 => "knn_minus_matching_v2",
            Family::Complete => "complete",
            Family::Multipartite { .. } => "multipartite",
            Family::UnitRotations { .. } => "thm14",
            Family::D60Orders6And30 { .. } => "ex44_S",
            Family::D60Orders10And30 { .. } => "ex44_R",
            Family::D84Orders6And42 { .. } => "ex45_S",
            Family::D84Orders14And42 { .. } => "ex45_R",
            Family::CaseV { .. } => "caseV",
        }
    }

    /// The group order parameter `n` the family forces, if any.
    pub fn forced_n(&self) -> Option<usize> {
        match self {
            Family::UnitRotations { p, .. } => Some(4 * p),
            Family::D60Orders6And30 { .. } | Family::D60Orders10And30 { .. } => Some(30),
            Family::D84Orders6And42 { .. } | Family::D84Orders14And42 { .. } => Some(42),
            _ => None,
        }
    }

    pub fn build(&self, group: DihedralGroup) -> Result<ConnectionSet, Error> {
        let n = group.n();
        let fam = self.name();
        let bad = |reason: String| Error::InvalidFamilyParameter { family: fam, reason };
        if let Some(forced) = self.forced_n() {
            if forced != n {
                return Err(bad(format!("requires n = {forced}, got n = {n}")));
            }
        }
        let refl = |parity: Option<usize>| -> Vec<DihedralElement> {
            (0..n)
                .filter(|j| parity.map_or(true, |p| j % 2 == p))
                .map(DihedralElement::reflection)
                .collect()
        };
        let rotations = |keep: &dyn Fn(usize) -> bool| -> Vec<DihedralElement> {
            (1..n).filter(|&i| keep(i)).map(DihedralElement::rotation).collect()
        };
        let need_even = || {
            if n % 2 == 0 {
                Ok(())
            } else {
                Err(bad(format!("requires n even, got n = {n}")))
            }
        };
        let check_pi = |pi: u8| {
            if pi <= 1 {
                Ok(pi as usize)
            } else {
                Err(bad(format!("pi must be 0 or 1, got {pi}")))
            }
        };
        let by_order = |pi: usize, orders: [usize; 2]| -> Vec<DihedralElement> {
            let mut v = group.conjugacy_class(DihedralElement::reflection(pi)).members;
            v.extend(rotations(&|i| orders.contains(&group.element_order(DihedralElement::rotation(i)))));
            v
        };

        let elements = match self {
            Family::KnnV1 => refl(None),
            Family::KnnV2 | Family::KnnV3 => {
                need_even()?;
                let mut v = refl(Some(if *self == Family::KnnV2 { 0 } else { 1 }));
                v.extend(rotations(&|i| i % 2 == 1));
                v
            }
            Family::KnnMinusMatchingV1 | Family::KnnMinusMatchingV2 => {
                need_even()?;
                let k = n / 2;
                if k < 3 || k % 2 == 0 {
                    return Err(bad(format!("requires n = 2k with k >= 3 odd, got n = {n}")));
                }
                let mut v = refl(Some(if *self == Family::KnnMinusMatchingV1 { 0 } else { 1 }));
                v.extend(rotations(&|i| i % 2 == 1 && i != k));
                v
            }
            Family::Complete => group.elements().skip(1).collect(),
            Family::Multipartite { t } => {
                let t = *t;
                if t < 2 || n % t != 0 {
                    return Err(bad(format!("t = {t} must be >= 2 and divide n = {n}")));
                }
                if 2 * n / t < 3 {
                    return Err(bad(format!("m = 2n/t = {} must be >= 3", 2 * n / t)));
                }
                let step = n / t;
                let mut v = refl(None);
                v.extend(rotations(&|i| i % step != 0));
                v
            }
            Family::UnitRotations { p, pi } => {
                let pi = check_pi(*pi)?;
                if *p < 3 || !is_prime(*p as u64) {
                    return Err(bad(format!("p = {p} must be an odd prime")));
                }
                let mut v = group.conjugacy_class(DihedralElement::reflection(pi)).members;
                v.extend(rotations(&|i| gcd(i, n) == 1));
                v
            }
            Family::D60Orders6And30 { pi } => by_order(check_pi(*pi)?, [6, 30]),
            Family::D60Orders10And30 { pi } => by_order(check_pi(*pi)?, [10, 30]),
            Family::D84Orders6And42 { pi } => by_order(check_pi(*pi)?, [6, 42]),
            Family::D84Orders14And42 { pi } => by_order(check_pi(*pi)?, [14, 42]),
            Family::CaseV { pi, delta } => {
                let pi = check_pi(*pi)?;
                need_even()?;
                let k = n / 2;
                let mut closed = FixedBitSet::with_capacity(2 * n);
                for &d in delta {
                    let d = group.check(d)?;
                    if d.refl || d.rot % 2 == 0 {
                        return Err(bad(format!("{d} is not in <a^2>a")));
                    }
                    closed.insert(d.rot);
                    closed.insert(group.inverse(d).rot);
                }
                let size = closed.count_ones(..);
                if size == 0 || size + 2 > k {
                    return Err(bad(format!("|Δ| = {size} must satisfy 0 < |Δ| <= k - 2 = {}", k as i64 - 2)));
                }
                let mut v = group.conjugacy_class(DihedralElement::reflection(pi)).members;
                v.extend(closed.ones().map(DihedralElement::rotation));
                v
            }
        };
        ConnectionSet::new(group, &elements)
    }
}

/// `Cay(D_2n, S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    connection: ConnectionSet,
    graph: Graph,
}

impl CayleyGraph {
    pub fn new(connection: ConnectionSet) -> Self {
        let g = connection.group();
        let order = g.order();
        let s: Vec<_> = connection.elements().collect();
        let rows = (0..order)
            .map(|u| {
                let x = g.from_index(u);
                let mut row = FixedBitSet::with_capacity(order);
                for &t in &s {
                    // v ~ u iff v u^-1 in S, i.e. v = t u
                    row.insert(g.index(g.mul(t, x)));
                }
                row
            })
            .collect();
        CayleyGraph {
            graph: Graph::from_rows(rows),
            connection,
        }
    }

    pub fn group(&self) -> DihedralGroup {
        self.connection.group()
    }

    pub fn n(&self) -> usize {
        self.connection.n()
    }

    pub fn connection(&self) -> &ConnectionSet {
        &self.connection
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex(&self, x: DihedralElement) -> usize {
        self.group().index(x)
    }

    pub fn element(&self, v: usize) -> DihedralElement {
        self.group().from_index(v)
    }

    /// Generators `R(a)`, `R(b)` of the right regular representation.
    pub fn right_regular_generators(&self) -> Vec<Permutation> {
        let g = self.group();
        alloc::vec![g.right_regular(g.a()), g.right_regular(g.b())]
    }

    /// Whether `x -> x^-1` is a graph automorphism.
    pub fn inversion_map_is_automorphism(&self) -> bool {
        self.graph
            .is_automorphism(&self.group().inversion_map())
            .expect("degree matches by construction")
    }

    /// Whether every `L(g)` is a graph automorphism.
    pub fn left_regular_in_aut(&self) -> bool {
        let g = self.group();
        g.elements().all(|x| {
            self.graph
                .is_automorphism(&g.left_regular(x))
                .expect("degree matches by construction")
        })
    }

    /// `Cay(G, S^phi)`; `x -> x^phi` is an isomorphism from `self` onto it.
    pub fn apply_group_automorphism(&self, phi: GroupAutomorphism) -> CayleyGraph {
        CayleyGraph::new(self.connection.image(phi))
    }
}
