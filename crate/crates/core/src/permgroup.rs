//! Permutation groups: Schreier-Sims, orbits, blocks and transitivity tests.
//!
//! A [`PermutationGroup`] always carries a complete base and strong
//! generating set (built eagerly at construction), so [`order`] and
//! [`contains`] are exact. Orders are [`FactoredInteger`]s.
//!
//! [`order`]: PermutationGroup::order
//! [`contains`]: PermutationGroup::contains

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::factored::FactoredInteger;
use crate::graph::Graph;
use crate::metrics::distance_partition;
use crate::perm::Permutation;
use crate::Error;

const NONE: u32 = u32::MAX;

/// One level of a stabilizer chain.
#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `slot[x]` indexes `reps` for orbit points, `NONE` otherwise.
    slot: Vec<u32>,
    /// `reps[slot[x]]` maps `base` to `x`.
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
    /// Schreier generators `(point, gen)` already shown to sift.
    checked: FixedBitSet,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut slot = vec![NONE; degree];
        slot[base] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            slot,
            reps: vec![Permutation::identity(degree)],
            inv_reps: vec![Permutation::identity(degree)],
            checked: FixedBitSet::new(),
        }
    }

    fn degree(&self) -> usize {
        self.slot.len()
    }

    /// Extends the orbit under the current generators. Existing
    /// representatives are never replaced, so earlier checks stay valid.
    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for g in &self.gens {
                let y = g.apply(x);
                if self.slot[y] == NONE {
                    let rep = &self.reps[self.slot[x] as usize] * g;
                    self.slot[y] = self.reps.len() as u32;
                    self.inv_reps.push(rep.inverse());
                    self.reps.push(rep);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }

    fn rep(&self, x: usize) -> Option<&Permutation> {
        match self.slot[x] {
            NONE => None,
            s => Some(&self.reps[s as usize]),
        }
    }

    fn push_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        self.checked.grow(self.gens.len() * self.degree());
        self.extend_orbit();
    }
}

/// A permutation group with a complete stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: FactoredInteger,
}

fn check_degrees(degree: usize, gens: &[Permutation]) -> Result<(), Error> {
    match gens.iter().find(|g| g.degree() != degree) {
        Some(g) => Err(Error::DegreeMismatch {
            expected: degree,
            found: g.degree(),
        }),
        None => Ok(()),
    }
}

impl PermutationGroup {
    /// `<gens>` acting on `0..degree`.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self, Error> {
        Self::with_base_prefix(degree, gens, &[])
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
            order: FactoredInteger::one(),
        }
    }

    /// `<gens>` with a chain whose base starts with `prefix`.
    pub fn with_base_prefix(degree: usize, gens: Vec<Permutation>, prefix: &[usize]) -> Result<Self, Error> {
        check_degrees(degree, &gens)?;
        if let Some(&p) = prefix.iter().find(|&&p| p >= degree) {
            return Err(Error::NotAPermutation(format!("base point {p} out of range")));
        }
        let levels = schreier_sims(degree, &gens, prefix, None);
        Ok(Self::from_levels(degree, gens, levels))
    }

    /// Builds from a known base and, per level, the generators that fix the
    /// earlier base points and were found at that level. The caller
    /// guarantees the resulting chain is complete.
    pub(crate) fn from_bsgs(degree: usize, base: &[usize], found: Vec<Vec<Permutation>>) -> Self {
        debug_assert_eq!(base.len(), found.len());
        let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(degree, b)).collect();
        let mut generators = Vec::new();
        for (i, gens) in found.into_iter().enumerate() {
            for g in gens {
                for level in &mut levels[..=i] {
                    level.gens.push(g.clone());
                }
                generators.push(g);
            }
        }
        for level in &mut levels {
            level.extend_orbit();
        }
        let group = Self::from_levels(degree, generators, levels);
        debug_assert!(group.generators.iter().all(|g| group.contains(g)));
        group
    }

    fn from_levels(degree: usize, generators: Vec<Permutation>, mut levels: Vec<Level>) -> Self {
        for level in &mut levels {
            level.checked = FixedBitSet::new();
        }
        let order = levels
            .iter()
            .map(|l| FactoredInteger::from_u64(l.orbit.len() as u64))
            .product();
        PermutationGroup {
            degree,
            generators,
            levels,
            order,
        }
    }

    /// The same group with a chain whose base starts with `prefix`.
    pub fn rebase(&self, prefix: &[usize]) -> PermutationGroup {
        let base: Vec<usize> = self.levels.iter().map(|l| l.base).collect();
        if base.starts_with(prefix) {
            return self.clone();
        }
        let levels = schreier_sims(self.degree, &self.generators, prefix, Some(&self.order));
        Self::from_levels(self.degree, self.generators.clone(), levels)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &FactoredInteger {
        &self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Fundamental orbit lengths along the base.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators, those of the first level (a generating set for
    /// the whole group).
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map_or(&[], |l| l.gens.as_slice())
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// Membership by sifting.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, depth) = sift(&self.levels, g.clone(), 0);
        depth == self.levels.len() && residue.is_identity()
    }

    /// Every generator of `self` is normalized by every generator of `over`.
    pub fn is_normal_in(&self, over: &PermutationGroup) -> Result<bool, Error> {
        if over.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: over.degree,
            });
        }
        Ok(over
            .generators
            .iter()
            .all(|x| self.generators.iter().all(|h| self.contains(&x.conjugate(h)))))
    }

    /// Stabilizer of `v`, with a complete chain.
    pub fn point_stabilizer(&self, v: usize) -> PermutationGroup {
        self.pointwise_stabilizer(&[v])
    }

    /// Pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermutationGroup {
        let chain = self.rebase(points);
        let k = points.len().min(chain.levels.len());
        if chain.levels.iter().take(k).map(|l| l.base).ne(points[..k].iter().copied()) {
            // rebase only skips prefixes it already has, so this is unreachable
            unreachable!("rebase must honour the prefix");
        }
        let levels: Vec<Level> = chain.levels[k..].to_vec();
        let generators = levels.first().map_or(Vec::new(), |l| l.gens.clone());
        Self::from_levels(self.degree, generators, levels)
    }

    /// Size of the orbit of the tuple `points` (acting componentwise).
    pub fn tuple_orbit_size(&self, points: &[usize]) -> FactoredInteger {
        let chain = self.rebase(points);
        chain.levels[..points.len()]
            .iter()
            .map(|l| FactoredInteger::from_u64(l.orbit.len() as u64))
            .product()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit(&self.generators, self.degree, point)
    }

    /// All orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.degree);
        let mut out = Vec::new();
        for v in 0..self.degree {
            if !seen.contains(v) {
                let o = self.orbit(v);
                for &x in &o {
                    seen.insert(x);
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Transitive with trivial point stabilizers.
    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order == FactoredInteger::from_u64(self.degree.max(1) as u64)
    }

    /// Minimal nontrivial block systems, from the minimal blocks containing
    /// `{0, j}` for each `j != 0`.
    pub fn minimal_block_systems(&self) -> Result<Vec<BlockSystem>, Error> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let mut found: Vec<BlockSystem> = Vec::new();
        for j in 1..self.degree {
            let system = minimal_block(&self.generators, self.degree, 0, j);
            if system.cells.len() > 1 && !found.contains(&system) {
                found.push(system);
            }
        }
        let minimal: Vec<BlockSystem> = found
            .iter()
            .filter(|p| {
                let mine = &p.cells[p.cell_of[0]];
                !found.iter().any(|q| {
                    let theirs = &q.cells[q.cell_of[0]];
                    theirs.len() < mine.len() && theirs.iter().all(|x| mine.contains(x))
                })
            })
            .cloned()
            .collect();
        Ok(minimal)
    }

    /// Transitive with no nontrivial block system.
    pub fn is_primitive(&self) -> Result<bool, Error> {
        Ok(self.minimal_block_systems()?.is_empty())
    }

    /// The action on the cells of an invariant partition.
    pub fn action_on_blocks(&self, blocks: &BlockSystem) -> Result<PermutationGroup, Error> {
        let gens = self
            .generators
            .iter()
            .map(|g| blocks.induced(g))
            .collect::<Result<Vec<_>, _>>()?;
        PermutationGroup::new(blocks.len(), gens)
    }

    /// The action on an invariant subset, relabelled to `0..points.len()` in
    /// the given order.
    pub fn restrict(&self, points: &[usize]) -> Result<PermutationGroup, Error> {
        let mut index = vec![usize::MAX; self.degree];
        for (i, &p) in points.iter().enumerate() {
            index[p] = i;
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let images: Option<Vec<usize>> = points
                    .iter()
                    .map(|&p| Some(index[g.apply(p)]).filter(|&i| i != usize::MAX))
                    .collect();
                images
                    .ok_or_else(|| Error::NonInvariantPartition(format!("subset {points:?} is not invariant")))
                    .and_then(Permutation::from_images)
            })
            .collect::<Result<Vec<_>, _>>()?;
        PermutationGroup::new(points.len(), gens)
    }

    /// Whether the action on the invariant subset `points` is regular.
    pub fn is_regular_on(&self, points: &[usize]) -> Result<bool, Error> {
        Ok(self.restrict(points)?.is_regular())
    }

    /// The same group on `new_degree >= degree` points, fixing the new ones.
    pub fn extend(&self, new_degree: usize) -> PermutationGroup {
        let gens = self.generators.iter().map(|g| g.extend(new_degree)).collect();
        PermutationGroup::new(new_degree, gens).expect("degrees agree")
    }
}

/// Sifts `g` through `levels[start..]`; returns the residue and the index of
/// the first level where it left the fundamental orbit (or `levels.len()`).
fn sift(levels: &[Level], mut g: Permutation, start: usize) -> (Permutation, usize) {
    for (i, level) in levels.iter().enumerate().skip(start) {
        let x = g.apply(level.base);
        match level.slot[x] {
            NONE => return (g, i),
            s => g = &g * &level.inv_reps[s as usize],
        }
    }
    (g, levels.len())
}

fn first_moved(g: &Permutation) -> Option<usize> {
    (0..g.degree()).find(|&i| g.apply(i) != i)
}

fn chain_order(levels: &[Level]) -> FactoredInteger {
    levels
        .iter()
        .map(|l| FactoredInteger::from_u64(l.orbit.len() as u64))
        .product()
}

/// Deterministic Schreier-Sims. With `target` the construction stops as soon
/// as the orbit lengths multiply to it, which certifies completeness.
fn schreier_sims(
    degree: usize,
    gens: &[Permutation],
    prefix: &[usize],
    target: Option<&FactoredInteger>,
) -> Vec<Level> {
    let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let mut levels: Vec<Level> = prefix.iter().map(|&b| Level::new(degree, b)).collect();
    for g in &gens {
        if levels.iter().all(|l| g.apply(l.base) == l.base) {
            levels.push(Level::new(degree, first_moved(g).expect("non-identity")));
        }
    }
    for i in 0..levels.len() {
        let fixing: Vec<Permutation> = gens
            .iter()
            .filter(|g| levels[..i].iter().all(|l| g.apply(l.base) == l.base))
            .cloned()
            .collect();
        for g in fixing {
            levels[i].push_gen(g);
        }
    }
    let done = |levels: &[Level]| target.is_some_and(|t| chain_order(levels) == *t);
    if done(&levels) {
        return levels;
    }

    let mut i = levels.len();
    while i > 0 {
        let lvl = i - 1;
        match failing_schreier_generator(&mut levels, lvl) {
            None => i -= 1,
            Some((h, j)) => {
                if j == levels.len() {
                    let b = first_moved(&h).expect("residue is not the identity");
                    levels.push(Level::new(degree, b));
                }
                for level in &mut levels[lvl + 1..=j] {
                    level.push_gen(h.clone());
                }
                if done(&levels) {
                    return levels;
                }
                i = j + 1;
            }
        }
    }
    levels
}

/// Finds a Schreier generator of `levels[lvl]` that does not sift through
/// the levels above, marking the ones that do.
fn failing_schreier_generator(levels: &mut [Level], lvl: usize) -> Option<(Permutation, usize)> {
    let degree = levels[lvl].degree();
    let (below, above) = levels.split_at_mut(lvl + 1);
    let level = &mut below[lvl];
    for oi in 0..level.orbit.len() {
        let beta = level.orbit[oi];
        for gi in 0..level.gens.len() {
            let key = gi * degree + beta;
            if level.checked.contains(key) {
                continue;
            }
            let s = &level.gens[gi];
            let image = s.apply(beta);
            let u_beta = level.rep(beta).expect("orbit point");
            let inv = &level.inv_reps[level.slot[image] as usize];
            let images: Vec<usize> = (0..degree).map(|x| inv.apply(s.apply(u_beta.apply(x)))).collect();
            let schreier = Permutation::from_images_unchecked(images);
            level.checked.insert(key);
            if schreier.is_identity() {
                continue;
            }
            let (residue, depth) = sift(above, schreier, 0);
            if depth < above.len() || !residue.is_identity() {
                level.checked.set(key, false);
                return Some((residue, lvl + 1 + depth));
            }
        }
    }
    None
}

/// Orbit of `point` under `gens`, sorted.
pub fn orbit(gens: &[Permutation], degree: usize, point: usize) -> Vec<usize> {
    let mut seen = FixedBitSet::with_capacity(degree);
    seen.insert(point);
    let mut stack = vec![point];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen.put(y) {
                stack.push(y);
            }
        }
    }
    seen.ones().collect()
}

/// Orbit of a tuple under componentwise action, sorted. Fails once more than
/// `cap` tuples have been produced.
pub fn orbit_of_tuple(gens: &[Permutation], tuple: &[usize], cap: u128) -> Result<BTreeSet<Vec<usize>>, Error> {
    let mut seen = BTreeSet::new();
    seen.insert(tuple.to_vec());
    let mut queue = VecDeque::from([tuple.to_vec()]);
    while let Some(t) = queue.pop_front() {
        for g in gens {
            let image: Vec<usize> = t.iter().map(|&x| g.apply(x)).collect();
            if !seen.contains(&image) {
                seen.insert(image.clone());
                if seen.len() as u128 > cap {
                    return Err(Error::ArcCapExceeded {
                        count: seen.len() as u128,
                        cap,
                    });
                }
                queue.push_back(image);
            }
        }
    }
    Ok(seen)
}

/// Minimal block containing `{a, b}` (union-find closure under `gens`).
fn minimal_block(gens: &[Permutation], degree: usize, a: usize, b: usize) -> BlockSystem {
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut parent: Vec<usize> = (0..degree).collect();
    let mut queue = VecDeque::new();
    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
    parent[ra.max(rb)] = ra.min(rb);
    queue.push_back((a, b));
    while let Some((x, y)) = queue.pop_front() {
        for g in gens {
            let (gx, gy) = (g.apply(x), g.apply(y));
            let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
                queue.push_back((gx, gy));
            }
        }
    }
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut root_cell = vec![usize::MAX; degree];
    for v in 0..degree {
        let r = find(&mut parent, v);
        if root_cell[r] == usize::MAX {
            root_cell[r] = cells.len();
            cells.push(Vec::new());
        }
        cells[root_cell[r]].push(v);
    }
    BlockSystem::from_cells_unchecked(degree, cells)
}

/// A partition of `0..degree` into cells, ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl BlockSystem {
    /// Validates that `cells` partition `0..degree`.
    pub fn new(degree: usize, cells: Vec<Vec<usize>>) -> Result<Self, Error> {
        let mut seen = FixedBitSet::with_capacity(degree);
        for cell in &cells {
            if cell.is_empty() {
                return Err(Error::NonInvariantPartition("empty cell".into()));
            }
            for &x in cell {
                if x >= degree || seen.put(x) {
                    return Err(Error::NonInvariantPartition(format!("point {x} repeated or out of range")));
                }
            }
        }
        if seen.count_ones(..) != degree {
            return Err(Error::NonInvariantPartition("cells do not cover every point".into()));
        }
        Ok(Self::from_cells_unchecked(degree, cells))
    }

    fn from_cells_unchecked(degree: usize, mut cells: Vec<Vec<usize>>) -> Self {
        for c in &mut cells {
            c.sort_unstable();
        }
        cells.sort_unstable_by_key(|c| c[0]);
        let mut cell_of = vec![0; degree];
        for (i, c) in cells.iter().enumerate() {
            for &x in c {
                cell_of[x] = i;
            }
        }
        BlockSystem { cells, cell_of }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.cell_of.len()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_of(&self, x: usize) -> usize {
        self.cell_of[x]
    }

    /// Whether all cells have the same size.
    pub fn is_uniform(&self) -> bool {
        self.cells.iter().all(|c| c.len() == self.cells[0].len())
    }

    /// The permutation `g` induces on the cells.
    pub fn induced(&self, g: &Permutation) -> Result<Permutation, Error> {
        let images = self
            .cells
            .iter()
            .map(|c| {
                let target = self.cell_of[g.apply(c[0])];
                if c.iter().all(|&x| self.cell_of[g.apply(x)] == target) {
                    Ok(target)
                } else {
                    Err(Error::NonInvariantPartition(format!("{g} splits cell {c:?}")))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::from_images(images)
            .map_err(|_| Error::NonInvariantPartition(format!("{g} merges cells")))
    }

    pub fn is_invariant_under(&self, g: &Permutation) -> bool {
        g.degree() == self.degree() && self.induced(g).is_ok()
    }
}

/// Number of s-arcs, saturating at `u128::MAX`.
pub fn count_s_arcs(g: &Graph, s: usize) -> u128 {
    if s == 0 {
        return g.order() as u128;
    }
    // ways[u][i]: walks of the current length ending in the arc u -> neighbors(u)[i]
    let mut ways: Vec<Vec<u128>> = (0..g.order()).map(|u| vec![1; g.degree(u)]).collect();
    for _ in 1..s {
        let mut next: Vec<Vec<u128>> = (0..g.order()).map(|u| vec![0; g.degree(u)]).collect();
        for (u, row) in ways.iter().enumerate() {
            for (&v, &w) in g.neighbors(u).iter().zip(row) {
                if w == 0 {
                    continue;
                }
                for (j, &x) in g.neighbors(v).iter().enumerate() {
                    if x != u {
                        next[v][j] = next[v][j].saturating_add(w);
                    }
                }
            }
        }
        ways = next;
    }
    ways.iter().flatten().fold(0u128, |acc, &w| acc.saturating_add(w))
}

/// First s-arc in lexicographic order, if any.
fn first_s_arc(g: &Graph, s: usize) -> Option<Vec<usize>> {
    fn extend(g: &Graph, arc: &mut Vec<usize>, s: usize) -> bool {
        if arc.len() == s + 1 {
            return true;
        }
        let u = *arc.last().unwrap();
        let back = arc.len().checked_sub(2).map(|i| arc[i]);
        for &v in g.neighbors(u) {
            if Some(v) == back {
                continue;
            }
            arc.push(v);
            if extend(g, arc, s) {
                return true;
            }
            arc.pop();
        }
        false
    }
    (0..g.order()).find_map(|v| {
        let mut arc = vec![v];
        extend(g, &mut arc, s).then_some(arc)
    })
}

fn check_acts_on(g: &Graph, group: &PermutationGroup) -> Result<(), Error> {
    if group.degree() != g.order() {
        return Err(Error::DegreeMismatch {
            expected: g.order(),
            found: group.degree(),
        });
    }
    debug_assert!(group.generators().iter().all(|p| g.is_automorphism(p).unwrap_or(false)));
    Ok(())
}

/// Whether `group` (a subgroup of `Aut(g)`) is transitive on the s-arcs.
///
/// The orbit of one s-arc is measured through a stabilizer chain whose base
/// starts with that arc and compared with the total count, which must not
/// exceed `arc_cap`.
pub fn is_s_arc_transitive(g: &Graph, group: &PermutationGroup, s: usize, arc_cap: u128) -> Result<bool, Error> {
    check_acts_on(g, group)?;
    let total = count_s_arcs(g, s);
    if total > arc_cap {
        return Err(Error::ArcCapExceeded { count: total, cap: arc_cap });
    }
    let Some(arc) = first_s_arc(g, s) else {
        return Ok(true);
    };
    let orbit = group.tuple_orbit_size(&arc);
    Ok(orbit.to_u128() == Some(total))
}

pub fn is_arc_transitive(g: &Graph, group: &PermutationGroup, arc_cap: u128) -> Result<bool, Error> {
    is_s_arc_transitive(g, group, 1, arc_cap)
}

/// Vertex-transitive, and a vertex stabilizer is transitive on `Γ_1(u)` and
/// on `Γ_2(u)`.
pub fn is_2_distance_transitive(g: &Graph, group: &PermutationGroup) -> Result<bool, Error> {
    check_acts_on(g, group)?;
    if g.order() == 0 {
        return Ok(true);
    }
    if !group.is_transitive() {
        return Ok(false);
    }
    let shells = distance_partition(g, 0)?;
    let stab = group.point_stabilizer(0);
    for i in 1..=2 {
        let shell = shells.shell(i);
        if let Some(&x) = shell.first() {
            if stab.orbit(x).len() != shell.len() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn perm(d: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    fn closure(gens: &[Permutation], degree: usize) -> BTreeSet<Permutation> {
        let mut seen = BTreeSet::new();
        seen.insert(Permutation::identity(degree));
        let mut stack = vec![Permutation::identity(degree)];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = &x * g;
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    fn sym(d: usize) -> PermutationGroup {
        let cycle: Vec<usize> = (0..d).collect();
        PermutationGroup::new(d, vec![perm(d, &[&[0, 1]]), perm(d, &[&cycle])]).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        assert_eq!(sym(4).order().to_u128(), Some(24));
        assert_eq!(*sym(10).order(), FactoredInteger::factorial(10));
        assert!(sym(5).is_primitive().unwrap());
    }

    #[test]
    fn stabilizer_orbit_theorem() {
        let g = sym(6);
        let stab = g.point_stabilizer(3);
        assert_eq!(stab.order().to_u128(), Some(120));
        assert_eq!(stab.order() * &FactoredInteger::from_u64(6), *g.order());
        assert!(stab.generators().iter().all(|p| p.apply(3) == 3));
        assert_eq!(g.pointwise_stabilizer(&[0, 5]).order().to_u128(), Some(24));
        assert_eq!(g.tuple_orbit_size(&[2, 4, 1]).to_u128(), Some(120));
    }

    #[test]
    fn cyclic_regular_blocks() {
        let c6 = PermutationGroup::new(6, vec![perm(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert!(c6.is_regular());
        let systems = c6.minimal_block_systems().unwrap();
        let mut sizes: Vec<usize> = systems.iter().map(|b| b.cells()[0].len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3]);
        // oracle: cosets of the subgroups of order 2 and 3
        assert!(systems.iter().any(|b| b.cells() == [vec![0, 3], vec![1, 4], vec![2, 5]]));
        assert!(systems.iter().any(|b| b.cells() == [vec![0, 2, 4], vec![1, 3, 5]]));
        for b in &systems {
            assert!(c6.generators().iter().all(|g| b.is_invariant_under(g)));
        }
        assert!(!c6.is_primitive().unwrap());
    }

    #[test]
    fn intransitive_block_request_fails() {
        let g = PermutationGroup::new(4, vec![perm(4, &[&[0, 1]])]).unwrap();
        assert_eq!(g.minimal_block_systems(), Err(Error::Intransitive));
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn membership_and_normality() {
        let a4 = PermutationGroup::new(4, vec![perm(4, &[&[0, 1, 2]]), perm(4, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(a4.order().to_u128(), Some(12));
        assert!(!a4.contains(&perm(4, &[&[0, 1]])));
        assert!(a4.contains(&perm(4, &[&[0, 1], &[2, 3]])));
        assert!(a4.is_normal_in(&sym(4)).unwrap());
        let c3 = PermutationGroup::new(4, vec![perm(4, &[&[0, 1, 2]])]).unwrap();
        assert!(!c3.is_normal_in(&sym(4)).unwrap());
        assert!(c3.is_normal_in(&sym(5)).is_err());
    }

    #[test]
    fn trivial_and_identity_generators() {
        let g = PermutationGroup::new(5, vec![Permutation::identity(5)]).unwrap();
        assert!(g.is_trivial());
        assert!(g.contains(&Permutation::identity(5)));
        assert_eq!(g.orbit(2), vec![2]);
    }

    #[test]
    fn orders_match_brute_force() {
        let gen_sets: Vec<Vec<Permutation>> = vec![
            vec![perm(8, &[&[0, 1, 2, 3]]), perm(8, &[&[4, 5], &[0, 2]])],
            vec![perm(7, &[&[0, 1, 2, 3, 4, 5, 6]]), perm(7, &[&[1, 2, 4], &[3, 6, 5]])],
            vec![perm(9, &[&[0, 1, 2], &[3, 4, 5], &[6, 7, 8]]), perm(9, &[&[0, 3, 6], &[1, 4, 7]])],
            vec![perm(6, &[&[0, 1], &[2, 3]]), perm(6, &[&[2, 3], &[4, 5]])],
        ];
        for gens in gen_sets {
            let d = gens[0].degree();
            let brute = closure(&gens, d);
            let g = PermutationGroup::new(d, gens.clone()).unwrap();
            assert_eq!(g.order().to_u128(), Some(brute.len() as u128));
            for p in &brute {
                assert!(g.contains(p));
            }
            for a in 0..d {
                for b in a + 1..d {
                    let t = Permutation::transposition(d, a, b);
                    assert_eq!(g.contains(&t), brute.contains(&t));
                }
            }
        }
    }

    #[test]
    fn tuple_orbits() {
        let g = sym(4);
        let o = orbit_of_tuple(g.generators(), &[0, 1], 1000).unwrap();
        assert_eq!(o.len(), 12);
        assert!(orbit_of_tuple(g.generators(), &[0, 1, 2], 5).is_err());
    }

    #[test]
    fn block_action_and_restriction() {
        let blocks = BlockSystem::new(6, vec![vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
        let c6 = PermutationGroup::new(6, vec![perm(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        let on_blocks = c6.action_on_blocks(&blocks).unwrap();
        assert_eq!(on_blocks.order().to_u128(), Some(3));
        let g = PermutationGroup::new(6, vec![perm(6, &[&[0, 1, 2]]), perm(6, &[&[3, 4]])]).unwrap();
        assert!(g.is_regular_on(&[0, 1, 2]).unwrap());
        assert!(!g.is_regular_on(&[3, 4, 5]).unwrap_or(true));
        assert!(g.restrict(&[0, 3]).is_err());
        assert!(BlockSystem::new(4, vec![vec![0, 1], vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn arc_counts() {
        assert_eq!(count_s_arcs(&Graph::complete_bipartite(4), 3), 8 * 4 * 3 * 3);
        assert_eq!(count_s_arcs(&Graph::cycle(6), 5), 12);
        assert_eq!(count_s_arcs(&Graph::path(3), 2), 2);
    }

    #[test]
    fn cycle_is_arc_transitive() {
        let d12 = PermutationGroup::new(6, vec![perm(6, &[&[0, 1, 2, 3, 4, 5]]), perm(6, &[&[1, 5], &[2, 4]])]).unwrap();
        let c6 = Graph::cycle(6);
        for s in 1..6 {
            assert!(is_s_arc_transitive(&c6, &d12, s, 1000).unwrap());
        }
        assert!(is_2_distance_transitive(&c6, &d12).unwrap());
        assert!(is_arc_transitive(&c6, &d12, 5).is_err());
    }
}
