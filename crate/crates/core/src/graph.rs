//! Simple undirected graphs with word-packed adjacency rows.

use alloc::vec::Vec;
use fixedbitset::FixedBitSet;

use crate::perm::Permutation;
use crate::Error;

/// Undirected simple graph on `0..order`.
///
/// Adjacency is held twice: as one bitset row per vertex (for intersections
/// and O(1) edge tests) and as sorted neighbor lists (for BFS and refinement).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(order: usize) -> Self {
        Graph {
            rows: (0..order).map(|_| FixedBitSet::with_capacity(order)).collect(),
            neighbors: alloc::vec![Vec::new(); order],
        }
    }

    /// Builds from an edge list; loops are dropped and repeated edges merged.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Self {
        let mut rows: Vec<FixedBitSet> = (0..order).map(|_| FixedBitSet::with_capacity(order)).collect();
        for &(u, v) in edges {
            if u != v {
                rows[u].insert(v);
                rows[v].insert(u);
            }
        }
        Self::from_rows(rows)
    }

    /// Builds from symmetric, loop-free bitset rows.
    pub(crate) fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        let neighbors = rows.iter().map(|r| r.ones().collect()).collect();
        let g = Graph { rows, neighbors };
        debug_assert!(g.is_symmetric());
        g
    }

    pub fn complete(order: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..order {
            for v in u + 1..order {
                edges.push((u, v));
            }
        }
        Self::from_edges(order, &edges)
    }

    pub fn cycle(order: usize) -> Self {
        let edges: Vec<_> = (0..order).map(|i| (i, (i + 1) % order)).collect();
        Self::from_edges(order, &edges)
    }

    pub fn path(order: usize) -> Self {
        let edges: Vec<_> = (1..order).map(|i| (i - 1, i)).collect();
        Self::from_edges(order, &edges)
    }

    /// `K_{m,m}` with parts `0..m` and `m..2m`.
    pub fn complete_bipartite(m: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..m {
            for v in m..2 * m {
                edges.push((u, v));
            }
        }
        Self::from_edges(2 * m, &edges)
    }

    /// `K_{m[t]}` with parts `{i t, .., i t + t - 1}`.
    pub fn complete_multipartite(m: usize, t: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..m * t {
            for v in u + 1..m * t {
                if u / t != v / t {
                    edges.push((u, v));
                }
            }
        }
        Self::from_edges(m * t, &edges)
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    #[inline]
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Common valency, if the graph is regular.
    pub fn valency(&self) -> Option<usize> {
        let d = self.neighbors.first().map_or(0, Vec::len);
        self.neighbors.iter().all(|n| n.len() == d).then_some(d)
    }

    fn is_symmetric(&self) -> bool {
        (0..self.order()).all(|u| {
            !self.rows[u].contains(u) && self.neighbors[u].iter().all(|&v| self.rows[v].contains(u))
        })
    }

    /// Every edge maps to an edge under `perm`.
    pub fn is_automorphism(&self, perm: &Permutation) -> Result<bool, Error> {
        if perm.degree() != self.order() {
            return Err(Error::DegreeMismatch {
                expected: self.order(),
                found: perm.degree(),
            });
        }
        Ok((0..self.order()).all(|u| {
            let pu = perm.apply(u);
            self.neighbors[u].iter().all(|&v| self.rows[pu].contains(perm.apply(v)))
        }))
    }

    /// The graph with vertex `v` renamed to `perm(v)`.
    pub fn relabel(&self, perm: &Permutation) -> Graph {
        let mut edges = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            for &v in &self.neighbors[u] {
                if u < v {
                    edges.push((perm.apply(u), perm.apply(v)));
                }
            }
        }
        Graph::from_edges(self.order(), &edges)
    }

    /// True iff `map` carries this graph's edges exactly onto `other`'s.
    pub fn is_isomorphism_onto(&self, other: &Graph, map: &Permutation) -> bool {
        self.order() == other.order()
            && map.degree() == self.order()
            && self.edge_count() == other.edge_count()
            && (0..self.order()).all(|u| {
                self.neighbors[u]
                    .iter()
                    .all(|&v| other.is_adjacent(map.apply(u), map.apply(v)))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_graphs() {
        assert_eq!(Graph::complete(5).edge_count(), 10);
        assert_eq!(Graph::cycle(6).valency(), Some(2));
        assert_eq!(Graph::path(3).valency(), None);
        assert_eq!(Graph::complete_bipartite(4).valency(), Some(4));
        assert_eq!(Graph::complete_multipartite(3, 2).valency(), Some(4));
    }

    #[test]
    fn automorphism_check() {
        let c = Graph::cycle(5);
        let rot = Permutation::from_images((0..5).map(|i| (i + 1) % 5).collect()).unwrap();
        assert!(c.is_automorphism(&rot).unwrap());
        assert!(!c.is_automorphism(&Permutation::transposition(5, 0, 2)).unwrap());
        assert!(c.is_automorphism(&Permutation::identity(4)).is_err());
    }
}
