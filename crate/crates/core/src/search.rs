//! Automorphism groups by individualization-refinement.
//!
//! The search follows a first path (individualizing the first vertex of the
//! first smallest non-singleton cell until the partition is discrete) and
//! then, level by level from the bottom, decides for each vertex of the
//! level's target cell whether some automorphism fixing the earlier base
//! points maps the level's base point to it. Vertices already in the known
//! orbit, or in the orbit of a vertex shown inequivalent, are skipped. The
//! generators found at each level form a strong generating set relative to
//! the base of individualized vertices, so the group order is the product
//! of the level orbit lengths.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::graph::Graph;
use crate::perm::Permutation;
use crate::permgroup::PermutationGroup;
use crate::{Error, Limits};

/// An ordered partition of `0..n`, stored as one array of vertices with
/// contiguous cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPartition {
    lab: Vec<usize>,
    /// Start position of the cell holding each vertex.
    start_of: Vec<usize>,
    /// Cell length, meaningful at cell start positions.
    len_at: Vec<usize>,
}

impl ColoredPartition {
    /// One cell holding every vertex.
    pub fn unit(n: usize) -> Self {
        let mut len_at = vec![0; n];
        if n > 0 {
            len_at[0] = n;
        }
        ColoredPartition {
            lab: (0..n).collect(),
            start_of: vec![0; n],
            len_at,
        }
    }

    /// Cells ordered by colour value.
    pub fn from_colors(colors: &[usize]) -> Self {
        let n = colors.len();
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| (colors[v], v));
        let mut start_of = vec![0; n];
        let mut len_at = vec![0; n];
        let mut s = 0;
        for i in 0..n {
            if i > 0 && colors[lab[i]] != colors[lab[i - 1]] {
                s = i;
            }
            start_of[lab[i]] = s;
            len_at[s] += 1;
        }
        ColoredPartition { lab, start_of, len_at }
    }

    pub fn order(&self) -> usize {
        self.lab.len()
    }

    fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut i = 0;
        core::iter::from_fn(move || {
            (i < self.lab.len()).then(|| {
                let s = i;
                i += self.len_at[s];
                s
            })
        })
    }

    /// The cells in order, each sorted.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        self.starts()
            .map(|s| {
                let mut c = self.lab[s..s + self.len_at[s]].to_vec();
                c.sort_unstable();
                c
            })
            .collect()
    }

    pub fn cell_count(&self) -> usize {
        self.starts().count()
    }

    pub fn is_discrete(&self) -> bool {
        self.cell_count() == self.lab.len()
    }

    /// Whether every vertex of a cell has the same number of neighbours in
    /// every cell.
    pub fn is_equitable(&self, g: &Graph) -> bool {
        let starts: Vec<usize> = self.starts().collect();
        starts.iter().all(|&c| {
            let cell = &self.lab[c..c + self.len_at[c]];
            starts.iter().all(|&w| {
                let count = |v: usize| g.neighbors(v).iter().filter(|&&u| self.start_of[u] == w).count();
                cell.iter().all(|&v| count(v) == count(cell[0]))
            })
        })
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        self.starts()
            .filter(|&s| self.len_at[s] > 1)
            .min_by_key(|&s| (self.len_at[s], s))
    }

    /// Splits `v` off the front of its cell; returns the new singleton's start.
    fn individualize(&mut self, v: usize) -> usize {
        let s = self.start_of[v];
        let len = self.len_at[s];
        debug_assert!(len > 1);
        let p = (s..s + len).find(|&i| self.lab[i] == v).expect("v in its cell");
        self.lab.swap(s, p);
        self.len_at[s] = 1;
        self.len_at[s + 1] = len - 1;
        for &u in &self.lab[s + 1..s + len] {
            self.start_of[u] = s + 1;
        }
        s
    }

    /// Coarsest equitable refinement, in place.
    pub fn refine(&mut self, g: &Graph) {
        let all: Vec<usize> = self.starts().collect();
        self.refine_from(g, all);
    }

    /// Refines with the given cells as initial splitters and returns a hash
    /// of the splitting sequence (equal for partitions related by an
    /// automorphism).
    fn refine_from(&mut self, g: &Graph, initial: Vec<usize>) -> u64 {
        let n = self.lab.len();
        let mut in_queue = FixedBitSet::with_capacity(n);
        for &s in &initial {
            in_queue.insert(s);
        }
        let mut queue: VecDeque<usize> = initial.into();
        let mut count = vec![0u32; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut trace = Trace::new();
        while let Some(w) = queue.pop_front() {
            in_queue.set(w, false);
            let splitter: Vec<usize> = self.lab[w..w + self.len_at[w]].to_vec();
            for &x in &splitter {
                for &u in g.neighbors(x) {
                    if count[u] == 0 {
                        touched.push(u);
                    }
                    count[u] += 1;
                }
            }
            let mut cells: Vec<usize> = touched.iter().map(|&u| self.start_of[u]).collect();
            cells.sort_unstable();
            cells.dedup();
            trace.mix(w as u64);
            trace.mix(touched.len() as u64);
            for c in cells {
                let len = self.len_at[c];
                let cell = &mut self.lab[c..c + len];
                let first = count[cell[0]];
                if cell.iter().all(|&v| count[v] == first) {
                    trace.mix(((c as u64) << 32) | first as u64);
                    continue;
                }
                cell.sort_by_key(|&v| count[v]);
                let mut fragments: Vec<(usize, usize)> = Vec::new();
                let mut f = c;
                for i in c + 1..=c + len {
                    if i == c + len || count[self.lab[i]] != count[self.lab[i - 1]] {
                        fragments.push((f, i - f));
                        trace.mix(((f as u64) << 40) | ((i - f) as u64) << 20 | count[self.lab[f]] as u64);
                        f = i;
                    }
                }
                for &(f, l) in &fragments {
                    self.len_at[f] = l;
                    for &v in &self.lab[f..f + l] {
                        self.start_of[v] = f;
                    }
                }
                let skip = if in_queue.contains(c) {
                    Some(c)
                } else {
                    let largest = fragments.iter().map(|f| f.1).max().unwrap();
                    fragments.iter().find(|f| f.1 == largest).map(|f| f.0)
                };
                for &(f, _) in &fragments {
                    if Some(f) != skip {
                        in_queue.insert(f);
                        queue.push_back(f);
                    }
                }
            }
            for &u in &touched {
                count[u] = 0;
            }
            touched.clear();
        }
        trace.0
    }
}

struct Trace(u64);

impl Trace {
    fn new() -> Self {
        Trace(0xcbf2_9ce4_8422_2325)
    }

    fn mix(&mut self, x: u64) {
        self.0 = (self.0 ^ x).wrapping_mul(0x0000_0100_0000_01b3).rotate_left(17);
    }
}

/// Result of a search: the group and the number of refinement nodes used.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub group: PermutationGroup,
    pub nodes: u64,
}

/// `Aut(g)` starting from the unit partition.
pub fn automorphism_group(g: &Graph, limits: &Limits) -> Result<PermutationGroup, Error> {
    Ok(search(g, &ColoredPartition::unit(g.order()), limits)?.group)
}

/// Automorphisms of `g` preserving every cell of `coloring`.
pub fn search(g: &Graph, coloring: &ColoredPartition, limits: &Limits) -> Result<SearchOutcome, Error> {
    if coloring.order() != g.order() {
        return Err(Error::DegreeMismatch {
            expected: g.order(),
            found: coloring.order(),
        });
    }
    let mut s = Search {
        g,
        cap: limits.node_cap,
        nodes: 0,
        parts: Vec::new(),
        targets: Vec::new(),
        traces: Vec::new(),
        base: Vec::new(),
        leaf: Vec::new(),
    };
    let mut p = coloring.clone();
    p.refine(g);
    s.tick()?;
    while let Some(t) = p.target_cell() {
        let v = p.lab[t];
        s.parts.push(p.clone());
        s.targets.push(t);
        s.base.push(v);
        p.individualize(v);
        s.traces.push(p.refine_from(g, vec![t]));
        s.tick()?;
    }
    s.leaf = p.lab;

    let depth = s.base.len();
    let mut found: Vec<Vec<Permutation>> = vec![Vec::new(); depth];
    for i in (0..depth).rev() {
        let mut gens: Vec<Permutation> = found[i..].iter().flatten().cloned().collect();
        let mut orbit = closure(&gens, g.order(), [s.base[i]]);
        let mut failed = FixedBitSet::with_capacity(g.order());
        let t = s.targets[i];
        let cell: Vec<usize> = s.parts[i].lab[t..t + s.parts[i].len_at[t]].to_vec();
        for w in cell {
            if orbit.contains(w) || failed.contains(w) {
                continue;
            }
            match s.try_map(i, w)? {
                Some(gamma) => {
                    debug_assert!(g.is_automorphism(&gamma).unwrap());
                    gens.push(gamma.clone());
                    found[i].push(gamma);
                    orbit = closure(&gens, g.order(), orbit.ones().collect::<Vec<_>>());
                    failed = closure(&gens, g.order(), failed.ones().collect::<Vec<_>>());
                }
                None => {
                    failed.union_with(&closure(&gens, g.order(), [w]));
                }
            }
        }
    }
    log::debug!("automorphism search: depth {depth}, {} nodes", s.nodes);
    Ok(SearchOutcome {
        group: PermutationGroup::from_bsgs(g.order(), &s.base, found),
        nodes: s.nodes,
    })
}

/// Whether `perm` maps edges to edges.
pub fn verify_automorphism(g: &Graph, perm: &Permutation) -> Result<bool, Error> {
    g.is_automorphism(perm)
}

fn closure<I: IntoIterator<Item = usize>>(gens: &[Permutation], n: usize, seeds: I) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(n);
    let mut stack: Vec<usize> = Vec::new();
    for x in seeds {
        if !seen.put(x) {
            stack.push(x);
        }
    }
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen.put(y) {
                stack.push(y);
            }
        }
    }
    seen
}

struct Search<'a> {
    g: &'a Graph,
    cap: u64,
    nodes: u64,
    /// First-path partition at each level, before individualizing.
    parts: Vec<ColoredPartition>,
    targets: Vec<usize>,
    traces: Vec<u64>,
    base: Vec<usize>,
    leaf: Vec<usize>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), Error> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::NodeCapExceeded { nodes: self.nodes });
        }
        Ok(())
    }

    /// An automorphism fixing `base[..level]` and mapping `base[level]` to `w`.
    fn try_map(&mut self, level: usize, w: usize) -> Result<Option<Permutation>, Error> {
        let mut p = self.parts[level].clone();
        let t = p.individualize(w);
        let trace = p.refine_from(self.g, vec![t]);
        self.tick()?;
        if trace != self.traces[level] {
            return Ok(None);
        }
        self.descend(level + 1, p)
    }

    fn descend(&mut self, level: usize, p: ColoredPartition) -> Result<Option<Permutation>, Error> {
        if level == self.base.len() {
            if !p.is_discrete() {
                return Ok(None);
            }
            let mut images = vec![0; self.leaf.len()];
            for (k, &v) in self.leaf.iter().enumerate() {
                images[v] = p.lab[k];
            }
            let gamma = Permutation::from_images_unchecked(images);
            return Ok(self.g.is_automorphism(&gamma)?.then_some(gamma));
        }
        let t = self.targets[level];
        let len = self.parts[level].len_at[t];
        if p.start_of[p.lab[t]] != t || p.len_at[t] != len {
            return Ok(None);
        }
        let cell: Vec<usize> = p.lab[t..t + len].to_vec();
        for u in cell {
            let mut q = p.clone();
            q.individualize(u);
            let trace = q.refine_from(self.g, vec![t]);
            self.tick()?;
            if trace != self.traces[level] {
                continue;
            }
            if let Some(gamma) = self.descend(level + 1, q)? {
                return Ok(Some(gamma));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factored::FactoredInteger;

    fn order(g: &Graph) -> u128 {
        automorphism_group(g, &Limits::default()).unwrap().order().to_u128().unwrap()
    }

    #[test]
    fn refinement_examples() {
        let mut p = ColoredPartition::unit(3);
        p.refine(&Graph::path(3));
        assert_eq!(p.cells(), vec![vec![0, 2], vec![1]]);
        let mut q = ColoredPartition::unit(6);
        q.refine(&Graph::complete(6));
        assert_eq!(q.cell_count(), 1);
        assert!(q.is_equitable(&Graph::complete(6)));
    }

    #[test]
    fn refinement_is_idempotent_and_equitable() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6)]);
        let mut p = ColoredPartition::unit(7);
        p.refine(&g);
        assert!(p.is_equitable(&g));
        let mut q = p.clone();
        q.refine(&g);
        assert_eq!(p.cells(), q.cells());
    }

    #[test]
    fn small_orders() {
        assert_eq!(order(&Graph::cycle(5)), 10);
        assert_eq!(order(&Graph::complete(5)), 120);
        assert_eq!(order(&Graph::complete_bipartite(3)), 72);
        assert_eq!(order(&Graph::path(4)), 2);
        assert_eq!(order(&Graph::empty(4)), 24);
        assert_eq!(order(&Graph::complete_multipartite(3, 2)), 48);
    }

    #[test]
    fn petersen_order() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        assert_eq!(order(&Graph::from_edges(10, &edges)), 120);
    }

    #[test]
    fn large_twin_group() {
        // K_{6[4]}: (4!)^6 * 6!
        let g = Graph::complete_multipartite(6, 4);
        let group = automorphism_group(&g, &Limits::default()).unwrap();
        let expected = FactoredInteger::factorial(4).pow(6) * FactoredInteger::factorial(6);
        assert_eq!(*group.order(), expected);
    }

    #[test]
    fn node_cap_is_enforced() {
        let limits = Limits { node_cap: 3, ..Limits::default() };
        assert_eq!(
            automorphism_group(&Graph::complete(6), &limits).unwrap_err(),
            Error::NodeCapExceeded { nodes: 4 }
        );
    }

    #[test]
    fn colouring_restricts_the_group() {
        let g = Graph::cycle(6);
        let colouring = ColoredPartition::from_colors(&[0, 1, 1, 1, 1, 1]);
        let out = search(&g, &colouring, &Limits::default()).unwrap();
        assert_eq!(out.group.order().to_u128(), Some(2));
    }
}
