//! Immutable simple undirected graphs on vertices `0..n`.
//!
//! Adjacency is stored twice: as per-vertex bit rows (for intersection-bound
//! searches) and as sorted neighbour lists (for traversal). Graphs never change
//! after construction; algorithms that delete vertices work on masks or on
//! fresh induced subgraphs carrying a [`Relabeling`].

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<BitSet>,
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if b.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn row(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.rows[u].intersection_len(&self.rows[v])
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.adjacent(u, v)))
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Length of a shortest cycle, by BFS from every vertex.
    pub fn girth(&self) -> Girth {
        let n = self.n();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let mut touched = vec![s];
            dist[s] = 0;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                        if best == 3 {
                            break 'bfs;
                        }
                    }
                }
            }
            for v in touched {
                dist[v] = usize::MAX;
                parent[v] = usize::MAX;
            }
            if best == 3 {
                break;
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// True iff some `r` vertices are pairwise adjacent.
    pub fn has_clique(&self, r: usize) -> bool {
        match r {
            0 => true,
            1 => self.n() > 0,
            2 => self.m > 0,
            3 => self
                .edges()
                .any(|(u, v)| self.rows[u].intersects(&self.rows[v])),
            _ => has_clique_within(&self.rows, &BitSet::full(self.n()), r),
        }
    }

    /// True iff no clique on `r` vertices exists.
    pub fn is_kr_free(&self, r: usize) -> bool {
        !self.has_clique(r)
    }

    /// True iff no two distinct vertices share `t` or more common neighbours.
    pub fn is_k2t_free(&self, t: usize) -> bool {
        self.find_k2t(t).is_none()
    }

    /// A pair of vertices with at least `t` common neighbours, if one exists.
    pub fn find_k2t(&self, t: usize) -> Option<(usize, usize)> {
        let n = self.n();
        for u in 0..n {
            if self.degree(u) < t {
                continue;
            }
            for v in u + 1..n {
                if self.common_neighbors(u, v) >= t {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// The subgraph induced by `set`, with vertices renumbered in increasing
    /// order of their original ids.
    pub fn induced_subgraph(&self, set: &VertexSet) -> (Graph, Relabeling) {
        let relabel = Relabeling::new(self.n(), set.as_slice());
        let mut b = GraphBuilder::new(set.len());
        for (i, &u) in set.as_slice().iter().enumerate() {
            for &w in &self.adj[u] {
                if let Some(j) = relabel.to_new(w) {
                    if i < j {
                        b.add_edge(i, j);
                    }
                }
            }
        }
        (b.build(), relabel)
    }

    /// Greedy colouring in increasing vertex order; colours start at 1.
    pub fn greedy_coloring(&self) -> Vec<u32> {
        let mut colors = vec![0u32; self.n()];
        let mut used = Vec::new();
        for v in self.vertices() {
            used.clear();
            used.resize(self.degree(v) + 2, false);
            for &w in &self.adj[v] {
                let c = colors[w] as usize;
                if c != 0 && c < used.len() {
                    used[c] = true;
                }
            }
            colors[v] = (1..used.len()).find(|&c| !used[c]).unwrap() as u32;
        }
        colors
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// True iff `candidates` contains `need` pairwise adjacent vertices.
pub(crate) fn has_clique_within(rows: &[BitSet], candidates: &BitSet, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if candidates.len() < need {
        return false;
    }
    let mut rest = candidates.clone();
    for v in candidates.iter() {
        // each clique is tried from its least vertex only
        rest.remove(v);
        if rest.len() + 1 < need {
            return false;
        }
        let mut next = rest.clone();
        next.intersect_with(&rows[v]);
        if has_clique_within(rows, &next, need - 1) {
            return true;
        }
    }
    false
}

/// Mutable adjacency used while generating; frozen into a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    rows: Vec<BitSet>,
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            rows: (0..n).map(|_| BitSet::new(n)).collect(),
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn row(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub(crate) fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    /// Adds `{u, v}`; a no-op if already present. Panics on loops.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loop");
        if self.rows[u].contains(v) {
            return;
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.m += 1;
    }

    pub fn build(mut self) -> Graph {
        for ns in self.adj.iter_mut() {
            ns.sort_unstable();
        }
        Graph {
            rows: self.rows,
            adj: self.adj,
            m: self.m,
        }
    }
}

/// Shortest cycle length; forests have infinite girth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= bound,
            Girth::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    /// Checks every member against `g`.
    pub fn checked(
        g: &Graph,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GraphError> {
        let s = Self::new(members);
        if let Some(&v) = s.0.last() {
            if v >= g.n() {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: g.n(),
                });
            }
        }
        Ok(s)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_bitset(&self, capacity: usize) -> BitSet {
        BitSet::from_iter_with_capacity(capacity, self.iter())
    }
}

impl From<&BitSet> for VertexSet {
    fn from(b: &BitSet) -> Self {
        VertexSet(b.iter().collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

/// Old-to-new id map produced by [`Graph::induced_subgraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    new_to_old: Vec<usize>,
    old_to_new: Vec<Option<usize>>,
}

impl Relabeling {
    fn new(old_n: usize, kept: &[usize]) -> Self {
        let mut old_to_new = vec![None; old_n];
        for (i, &v) in kept.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        Relabeling {
            new_to_old: kept.to_vec(),
            old_to_new,
        }
    }

    pub fn to_old(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    pub fn to_new(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn new_to_old(&self) -> &[usize] {
        &self.new_to_old
    }

    pub fn map_to_old(&self, vs: &[usize]) -> Vec<usize> {
        vs.iter().map(|&v| self.new_to_old[v]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named, NamedGraph};

    fn c5() -> Graph {
        named(&NamedGraph::Cycle(5)).unwrap()
    }

    fn petersen() -> Graph {
        named(&NamedGraph::Petersen).unwrap()
    }

    #[test]
    fn girth_examples() {
        assert_eq!(c5().girth(), Girth::Finite(5));
        assert_eq!(petersen().girth(), Girth::Finite(5));
        assert_eq!(
            named(&NamedGraph::Path(4)).unwrap().girth(),
            Girth::Infinite
        );
        assert_eq!(
            named(&NamedGraph::Complete(4)).unwrap().girth(),
            Girth::Finite(3)
        );
        assert_eq!(
            named(&NamedGraph::Heawood).unwrap().girth(),
            Girth::Finite(6)
        );
        assert!(Girth::Finite(1000) < Girth::Infinite);
    }

    #[test]
    fn clique_freeness() {
        assert!(c5().is_kr_free(3));
        assert!(!named(&NamedGraph::Complete(4)).unwrap().is_kr_free(4));
        assert!(named(&NamedGraph::Complete(4)).unwrap().is_kr_free(5));
        let g = named(&NamedGraph::Grotzsch).unwrap();
        // triple scan, independent of the edge-intersection path
        let brute = (0..g.n()).all(|a| {
            (a + 1..g.n()).all(|b| {
                (b + 1..g.n()).all(|c| !(g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c)))
            })
        });
        assert!(brute);
        assert!(g.is_kr_free(3));
    }

    #[test]
    fn k2t_freeness() {
        let p = petersen();
        for u in 0..10 {
            for v in u + 1..10 {
                let common = (0..10)
                    .filter(|&w| p.adjacent(u, w) && p.adjacent(v, w))
                    .count();
                assert!(common <= 1);
            }
        }
        assert!(p.is_k2t_free(2));
        assert!(!named(&NamedGraph::CompleteBipartite(3, 3))
            .unwrap()
            .is_k2t_free(3));
        assert!(c5().is_k2t_free(2));
    }

    #[test]
    fn induced_subgraph_examples() {
        let g = c5();
        let (h, map) = g.induced_subgraph(&VertexSet::new([0, 1, 2]));
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(map.to_old(2), 2);
        let (h, _) = g.induced_subgraph(&VertexSet::new([0, 2]));
        assert_eq!(h.m(), 0);
        let p = petersen();
        for v in 0..10 {
            let (h, map) = p.induced_subgraph(&VertexSet::new(p.neighbors(v).iter().copied()));
            assert_eq!((h.n(), h.m()), (3, 0));
            for w in p.neighbors(v) {
                assert_eq!(map.to_old(map.to_new(*w).unwrap()), *w);
            }
        }
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn greedy_is_proper() {
        let g = petersen();
        let c = g.greedy_coloring();
        assert!(g.edges().all(|(u, v)| c[u] != c[v]));
        assert!(c.iter().all(|&x| x >= 1));
    }
}
