//! BFS invariants, family recognition and twin detection.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::Error;

/// The shells `Γ_0(v), Γ_1(v), ...` of a BFS from `source`, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistancePartition {
    pub source: usize,
    pub shells: Vec<Vec<usize>>,
}

impl DistancePartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.shells.iter().map(Vec::len).collect()
    }

    pub fn eccentricity(&self) -> usize {
        self.shells.len() - 1
    }

    pub fn shell(&self, i: usize) -> &[usize] {
        self.shells.get(i).map_or(&[], Vec::as_slice)
    }
}

/// Distances from `source`; `None` for unreachable vertices.
pub fn distances(g: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap() + 1;
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(d);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Exact BFS shells from `source`. Fails on a disconnected graph.
pub fn distance_partition(g: &Graph, source: usize) -> Result<DistancePartition, Error> {
    let dist = distances(g, source);
    let unreached: Vec<usize> = (0..g.order()).filter(|&v| dist[v].is_none()).collect();
    if !unreached.is_empty() {
        return Err(Error::Disconnected { unreached });
    }
    let depth = dist.iter().map(|d| d.unwrap()).max().unwrap_or(0);
    let mut shells = vec![Vec::new(); depth + 1];
    for (v, d) in dist.iter().enumerate() {
        shells[d.unwrap()].push(v);
    }
    Ok(DistancePartition { source, shells })
}

pub fn is_connected(g: &Graph) -> bool {
    g.order() == 0 || distances(g, 0).iter().all(Option::is_some)
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; g.order()];
    let mut parent = vec![usize::MAX; g.order()];
    for s in 0..g.order() {
        dist.fill(usize::MAX);
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                break;
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    if best.map_or(true, |b| len < b) {
                        best = Some(len);
                    }
                    if len == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == Some(3) {
            break;
        }
    }
    best
}

/// Largest eccentricity. Fails on a disconnected graph.
pub fn diameter(g: &Graph) -> Result<usize, Error> {
    let mut best = 0;
    for v in 0..g.order() {
        best = best.max(distance_partition(g, v)?.eccentricity());
    }
    Ok(best)
}

/// The two colour classes of a proper 2-colouring, the one holding vertex 0
/// first; `None` when an odd cycle exists.
pub fn bipartition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut colour: Vec<Option<bool>> = vec![None; g.order()];
    for s in 0..g.order() {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let c = colour[u].unwrap();
            for &v in g.neighbors(u) {
                match colour[v] {
                    None => {
                        colour[v] = Some(!c);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == c => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for (v, c) in colour.into_iter().enumerate() {
        if c == Some(false) {
            left.push(v);
        } else {
            right.push(v);
        }
    }
    Some((left, right))
}

/// The closed-form families a dihedrant can be recognized as.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    /// `K_order`.
    Complete { order: usize },
    /// `K_{n,n}`.
    CompleteBipartite { n: usize },
    /// `K_{n,n} - nK_2`.
    CompleteBipartiteMinusMatching { n: usize },
    /// `K_{m[t]}`, `m >= 3` parts of size `t >= 2`.
    CompleteMultipartite { m: usize, t: usize },
    /// `C_length`.
    Cycle { length: usize },
    Other,
}

/// Structural recognition. Tried in the order complete, complete bipartite,
/// bipartite minus a matching, complete multipartite, cycle.
pub fn recognize(g: &Graph) -> FamilyTag {
    let order = g.order();
    let Some(k) = g.valency() else {
        return FamilyTag::Other;
    };
    if order == 0 || !is_connected(g) {
        return FamilyTag::Other;
    }
    if k + 1 == order {
        return FamilyTag::Complete { order };
    }
    if let Some((left, right)) = bipartition(g) {
        let n = left.len();
        if right.len() == n {
            if k == n {
                return FamilyTag::CompleteBipartite { n };
            }
            let one_missing = |side: &[usize], other: &[usize]| {
                side.iter()
                    .all(|&u| other.iter().filter(|&&v| !g.is_adjacent(u, v)).count() == 1)
            };
            if k + 1 == n && one_missing(&left, &right) && one_missing(&right, &left) {
                return FamilyTag::CompleteBipartiteMinusMatching { n };
            }
        }
    }
    if let Some((m, t)) = multipartite_shape(g) {
        return FamilyTag::CompleteMultipartite { m, t };
    }
    if k == 2 {
        return FamilyTag::Cycle { length: order };
    }
    FamilyTag::Other
}

/// `(m, t)` when non-adjacency is an equivalence relation with `m >= 3`
/// classes of common size `t >= 2`.
fn multipartite_shape(g: &Graph) -> Option<(usize, usize)> {
    let order = g.order();
    let mut class_of = vec![usize::MAX; order];
    let mut sizes = Vec::new();
    for v in 0..order {
        if class_of[v] != usize::MAX {
            continue;
        }
        let class: Vec<usize> = (0..order).filter(|&u| !g.is_adjacent(v, u)).collect();
        for &u in &class {
            if class_of[u] != usize::MAX {
                return None;
            }
            class_of[u] = sizes.len();
        }
        sizes.push(class.len());
    }
    // the classes partition V; they are the non-adjacency classes iff each
    // vertex is adjacent to exactly everything outside its class
    let consistent = (0..order).all(|u| g.degree(u) == order - sizes[class_of[u]]);
    let t = sizes[0];
    (consistent && sizes.len() >= 3 && t >= 2 && sizes.iter().all(|&s| s == t)).then_some((sizes.len(), t))
}

/// All pairs `(x, y)`, `x < y`, with `Γ(x) = Γ(y)`, sorted.
pub fn find_twins(g: &Graph) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by(|&u, &v| g.row(u).cmp(g.row(v)).then(u.cmp(&v)));
    let mut pairs = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && g.row(order[j]) == g.row(order[i]) {
            j += 1;
        }
        for a in i..j {
            for b in a + 1..j {
                pairs.push((order[a].min(order[b]), order[a].max(order[b])));
            }
        }
        i = j;
    }
    pairs.sort_unstable();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_cycle_invariants() {
        assert_eq!(girth(&Graph::path(5)), None);
        assert_eq!(girth(&Graph::cycle(7)), Some(7));
        assert_eq!(diameter(&Graph::cycle(7)), Ok(3));
        assert!(bipartition(&Graph::cycle(7)).is_none());
        assert_eq!(
            bipartition(&Graph::cycle(4)),
            Some((vec![0, 2], vec![1, 3]))
        );
        assert_eq!(recognize(&Graph::cycle(7)), FamilyTag::Cycle { length: 7 });
    }

    #[test]
    fn complete_graph_shells() {
        let k8 = Graph::complete(8);
        assert_eq!(distance_partition(&k8, 0).unwrap().sizes(), vec![1, 7]);
        assert_eq!(girth(&k8), Some(3));
        assert_eq!(recognize(&k8), FamilyTag::Complete { order: 8 });
        assert!(find_twins(&Graph::complete(5)).is_empty());
    }

    #[test]
    fn bipartite_families() {
        let k44 = Graph::complete_bipartite(4);
        assert_eq!(girth(&k44), Some(4));
        assert_eq!(diameter(&k44), Ok(2));
        assert_eq!(recognize(&k44), FamilyTag::CompleteBipartite { n: 4 });
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    edges.push((u, 5 + v));
                }
            }
        }
        let minus = Graph::from_edges(10, &edges);
        assert_eq!(recognize(&minus), FamilyTag::CompleteBipartiteMinusMatching { n: 5 });
    }

    #[test]
    fn multipartite_twins() {
        let g = Graph::complete_multipartite(3, 2);
        assert_eq!(recognize(&g), FamilyTag::CompleteMultipartite { m: 3, t: 2 });
        assert_eq!(find_twins(&g), vec![(0, 1), (2, 3), (4, 5)]);
    }

    #[test]
    fn disconnected_errors() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(
            distance_partition(&g, 0),
            Err(Error::Disconnected { unreached: vec![2, 3] })
        );
        assert!(diameter(&g).is_err());
        assert_eq!(recognize(&g), FamilyTag::Other);
    }

    #[test]
    fn petersen_is_other() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        let p = Graph::from_edges(10, &edges);
        assert_eq!(girth(&p), Some(5));
        assert_eq!(diameter(&p), Ok(2));
        assert_eq!(recognize(&p), FamilyTag::Other);
    }
}
