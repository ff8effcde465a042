use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use super::pending::{maximal_induced_path, pending_cycles};
use super::StructureError;
use crate::certificate::InducedCycleCert;
use crate::graph::{Graph, VertexSet};

/// Greedy maximal set (in index order) of vertices pairwise at distance at
/// least `2k+1`. Every vertex ends up within distance `2k` of the set.
pub fn separated_set(g: &Graph, k: usize) -> VertexSet {
    let mut covered = vec![false; g.n()];
    let mut centers = Vec::new();
    for v in g.vertices() {
        if covered[v] {
            continue;
        }
        centers.push(v);
        for (w, _) in bfs_within(g, v, 2 * k) {
            covered[w] = true;
        }
    }
    VertexSet::new(centers)
}

/// Vertices within distance `radius` of `source`, with their distances.
fn bfs_within(g: &Graph, source: usize, radius: usize) -> Vec<(usize, usize)> {
    let mut dist = BTreeMap::from([(source, 0)]);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        if d == radius {
            continue;
        }
        for &w in g.neighbors(u) {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist.into_iter().collect()
}

/// Why a partition failed its audits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionDefect {
    /// `edge` joins two vertices of the part of `center` but is not a tree edge.
    CycleInPart { center: usize, edge: (usize, usize) },
    /// The parts of `centers` are joined by both edges.
    DoubleJoin {
        centers: (usize, usize),
        edges: [(usize, usize); 2],
    },
    /// A vertex at distance at most `k` from `center` lies in another part.
    BallSplit { center: usize, vertex: usize },
    /// Two centres are closer than `2k+1`.
    CentersTooClose {
        centers: (usize, usize),
        distance: usize,
    },
    /// The vertex is not reachable from any centre.
    Unreached(usize),
    /// The contracted graph has a cycle shorter than 5.
    QuotientGirth(usize),
}

impl fmt::Display for PartitionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionDefect::CycleInPart { center, edge } => {
                write!(
                    f,
                    "part of {center} contains non-tree edge {},{}",
                    edge.0, edge.1
                )
            }
            PartitionDefect::DoubleJoin { centers, edges } => write!(
                f,
                "parts of {} and {} joined by {},{} and {},{}",
                centers.0, centers.1, edges[0].0, edges[0].1, edges[1].0, edges[1].1
            ),
            PartitionDefect::BallSplit { center, vertex } => {
                write!(f, "vertex {vertex} is near {center} but outside its part")
            }
            PartitionDefect::CentersTooClose { centers, distance } => {
                write!(
                    f,
                    "centres {} and {} at distance {distance}",
                    centers.0, centers.1
                )
            }
            PartitionDefect::Unreached(v) => {
                write!(f, "vertex {v} is not reachable from any centre")
            }
            PartitionDefect::QuotientGirth(g) => write!(f, "contracted graph has girth {g}"),
        }
    }
}

/// Partition of the vertices into induced trees grown from radius-`k` balls,
/// and the graph obtained by contracting each tree.
#[derive(Debug, Clone)]
pub struct TreePartitionMinor {
    pub k: usize,
    pub centers: VertexSet,
    /// Part index (position in `centers`) of each vertex.
    pub part_of: Vec<usize>,
    /// Tree parent of each vertex; `None` for centres.
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    /// Tree edges of each part, `(parent, child)`.
    pub part_trees: Vec<Vec<(usize, usize)>>,
    /// Graph on part indices, adjacent when the parts are joined by an edge.
    pub quotient: Graph,
    /// For each quotient edge `(a, b)` with `a < b`, the unique host edge
    /// `(x, y)` with `x` in part `a` and `y` in part `b`.
    pub cross_edge: BTreeMap<(usize, usize), (usize, usize)>,
}

impl TreePartitionMinor {
    pub fn center_of(&self, v: usize) -> usize {
        self.centers.as_slice()[self.part_of[v]]
    }

    pub fn part(&self, index: usize) -> Vec<usize> {
        (0..self.part_of.len())
            .filter(|&v| self.part_of[v] == index)
            .collect()
    }

    /// Every intra-part edge is a tree edge, so each part induces a tree.
    pub fn check_trees(&self, g: &Graph) -> Result<(), PartitionDefect> {
        for (u, v) in g.edges() {
            if self.part_of[u] == self.part_of[v]
                && self.parent[u] != Some(v)
                && self.parent[v] != Some(u)
            {
                return Err(PartitionDefect::CycleInPart {
                    center: self.center_of(u),
                    edge: (u, v),
                });
            }
        }
        Ok(())
    }

    /// Parent links stay inside a part and lead to its centre.
    pub fn check_partition(&self, g: &Graph) -> Result<(), PartitionDefect> {
        for v in g.vertices() {
            let mut x = v;
            let mut steps = 0;
            while let Some(p) = self.parent[x] {
                if !g.adjacent(x, p) || self.part_of[p] != self.part_of[v] || steps > g.n() {
                    return Err(PartitionDefect::Unreached(v));
                }
                x = p;
                steps += 1;
            }
            if x != self.center_of(v) {
                return Err(PartitionDefect::Unreached(v));
            }
        }
        Ok(())
    }

    /// Each part contains the radius-`k` ball of its centre, and centres
    /// are pairwise at distance at least `2k+1`.
    pub fn check_balls(&self, g: &Graph) -> Result<(), PartitionDefect> {
        for (i, &c) in self.centers.as_slice().iter().enumerate() {
            for (w, d) in bfs_within(g, c, 2 * self.k) {
                if w != c && self.centers.contains(w) {
                    return Err(PartitionDefect::CentersTooClose {
                        centers: (c.min(w), c.max(w)),
                        distance: d,
                    });
                }
                if d <= self.k && self.part_of[w] != i {
                    return Err(PartitionDefect::BallSplit {
                        center: c,
                        vertex: w,
                    });
                }
            }
        }
        Ok(())
    }

    /// At most one host edge between any two parts, and the quotient has
    /// exactly one edge per joined pair.
    pub fn check_cross_edges(&self, g: &Graph) -> Result<(), PartitionDefect> {
        let mut seen: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for (u, v) in g.edges() {
            let (a, b) = (self.part_of[u], self.part_of[v]);
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            let e = if a < b { (u, v) } else { (v, u) };
            if let Some(&prev) = seen.get(&key) {
                return Err(PartitionDefect::DoubleJoin {
                    centers: (
                        self.centers.as_slice()[key.0],
                        self.centers.as_slice()[key.1],
                    ),
                    edges: [prev, e],
                });
            }
            seen.insert(key, e);
        }
        let quotient_edges: BTreeMap<_, _> = self.quotient.edges().map(|e| (e, ())).collect();
        assert_eq!(quotient_edges.len(), seen.len());
        assert!(seen.keys().all(|k| quotient_edges.contains_key(k)));
        Ok(())
    }

    /// Tree path from `a` to `b`, both in the same part.
    pub fn tree_path(&self, a: usize, b: usize) -> Vec<usize> {
        let (mut x, mut y) = (a, b);
        let mut left = Vec::new();
        let mut right = Vec::new();
        while self.depth[x] > self.depth[y] {
            left.push(x);
            x = self.parent[x].unwrap();
        }
        while self.depth[y] > self.depth[x] {
            right.push(y);
            y = self.parent[y].unwrap();
        }
        while x != y {
            left.push(x);
            right.push(y);
            x = self.parent[x].unwrap();
            y = self.parent[y].unwrap();
        }
        left.push(x);
        left.extend(right.into_iter().rev());
        left
    }
}

/// Grows the radius-`k` balls around `centers` layer by layer: each vertex
/// joins the lowest-indexed part among its neighbours one layer closer.
/// Then audits the parts and contracts them.
pub fn tree_partition(
    g: &Graph,
    centers: &VertexSet,
    k: usize,
) -> Result<TreePartitionMinor, StructureError> {
    let n = g.n();
    let unset = usize::MAX;
    let mut part_of = vec![unset; n];
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut layer: Vec<usize> = Vec::new();
    for (i, c) in centers.iter().enumerate() {
        if c >= n {
            return Err(StructureError::PreconditionFailed(format!(
                "centre {c} is not a vertex"
            )));
        }
        part_of[c] = i;
        layer.push(c);
    }
    while !layer.is_empty() {
        let mut next: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for &u in &layer {
            for &w in g.neighbors(u) {
                if part_of[w] != unset {
                    continue;
                }
                let cand = (part_of[u], u);
                next.entry(w)
                    .and_modify(|best| *best = (*best).min(cand))
                    .or_insert(cand);
            }
        }
        layer = Vec::with_capacity(next.len());
        for (w, (part, p)) in next {
            part_of[w] = part;
            parent[w] = Some(p);
            depth[w] = depth[p] + 1;
            layer.push(w);
        }
    }
    if let Some(v) = (0..n).find(|&v| part_of[v] == unset) {
        return Err(StructureError::GirthViolation(PartitionDefect::Unreached(
            v,
        )));
    }
    let mut part_trees = vec![Vec::new(); centers.len()];
    for v in 0..n {
        if let Some(p) = parent[v] {
            part_trees[part_of[v]].push((p, v));
        }
    }
    let mut cross_edge = BTreeMap::new();
    for (u, v) in g.edges() {
        let (a, b) = (part_of[u], part_of[v]);
        if a != b {
            let key = (a.min(b), a.max(b));
            cross_edge
                .entry(key)
                .or_insert(if a < b { (u, v) } else { (v, u) });
        }
    }
    let quotient =
        Graph::new(centers.len(), cross_edge.keys().copied()).expect("distinct part pairs");
    let tpm = TreePartitionMinor {
        k,
        centers: centers.clone(),
        part_of,
        parent,
        depth,
        part_trees,
        quotient,
        cross_edge,
    };
    tpm.check_partition(g)
        .map_err(StructureError::GirthViolation)?;
    tpm.check_trees(g).map_err(StructureError::GirthViolation)?;
    tpm.check_cross_edges(g)
        .map_err(StructureError::GirthViolation)?;
    Ok(tpm)
}

/// Lifts an induced cycle of the quotient to the host: consecutive parts
/// are joined by their unique cross edge, and within a part the entry and
/// exit vertices are joined by the tree path.
pub fn lift_cycle(
    g: &Graph,
    tpm: &TreePartitionMinor,
    qcycle: &InducedCycleCert,
) -> Result<InducedCycleCert, StructureError> {
    qcycle.validate(&tpm.quotient).map_err(|v| {
        StructureError::PreconditionFailed(format!(
            "cycle is not induced in the contracted graph: {v}"
        ))
    })?;
    let q = &qcycle.vertices;
    let len = q.len();
    // endpoint inside part `a` of the cross edge towards part `b`
    let port = |a: usize, b: usize| {
        let (x, y) = tpm.cross_edge[&(a.min(b), a.max(b))];
        if a < b {
            x
        } else {
            y
        }
    };
    let mut cycle = Vec::new();
    for i in 0..len {
        let (prev, cur, next) = (q[(i + len - 1) % len], q[i], q[(i + 1) % len]);
        cycle.extend(tpm.tree_path(port(cur, prev), port(cur, next)));
    }
    let lifted = InducedCycleCert::new(cycle);
    lifted
        .validate(g)
        .map_err(|violation| StructureError::LiftFailed {
            cycle: lifted.vertices.clone(),
            violation,
        })?;
    Ok(lifted)
}

/// `3 + d(d-1)^k`, saturating.
pub fn long_cycle_bound(d: usize, k: usize) -> usize {
    let mut x = d;
    for _ in 0..k {
        x = x.saturating_mul(d.saturating_sub(1));
    }
    x.saturating_add(3)
}

/// An induced cycle of length at least `3 + d(d-1)^k` in a graph of girth at
/// least `16k+5` and minimum degree `d >= 2`: partition into trees around a
/// separated set, contract, take the longest pending-vertex cycle in the
/// contracted graph and lift it. Components are handled separately and the
/// longest lifted cycle wins.
pub fn long_induced_cycle(g: &Graph, k: usize) -> Result<InducedCycleCert, StructureError> {
    let d = g.min_degree();
    if g.n() == 0 || d < 2 {
        return Err(StructureError::PreconditionFailed(format!(
            "minimum degree {d} is below 2"
        )));
    }
    let need = 16 * k + 5;
    if !g.girth().at_least(need) {
        return Err(StructureError::PreconditionFailed(format!(
            "girth {} is below {need}",
            g.girth()
        )));
    }
    let mut best: Option<InducedCycleCert> = None;
    for comp in g.components() {
        let (h, map) = g.induced_subgraph(&VertexSet::new(comp));
        let c = long_cycle_in_component(&h, k)?;
        let c = InducedCycleCert::new(map.map_to_old(&c.vertices));
        if best.as_ref().is_none_or(|b| c.length() > b.length()) {
            best = Some(c);
        }
    }
    let best = best.expect("nonempty graph");
    best.validate(g).map_err(StructureError::Invalid)?;
    Ok(best)
}

fn long_cycle_in_component(h: &Graph, k: usize) -> Result<InducedCycleCert, StructureError> {
    let centers = separated_set(h, k);
    let tpm = tree_partition(h, &centers, k)?;
    let q = &tpm.quotient;
    if let Some(girth) = q.girth().finite().filter(|&x| x < 5) {
        return Err(StructureError::GirthViolation(
            PartitionDefect::QuotientGirth(girth),
        ));
    }
    if q.min_degree() < 2 {
        return Err(StructureError::PreconditionFailed(format!(
            "contracted graph has minimum degree {}",
            q.min_degree()
        )));
    }
    let path = maximal_induced_path(q, 0);
    let (_, qcycle) = pending_cycles(q, &path.vertices)
        .pop_last()
        .expect("minimum degree 2 leaves a pending vertex");
    lift_cycle(h, &tpm, &qcycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named, NamedGraph};

    #[test]
    fn separated_sets() {
        let c21 = named(&NamedGraph::Cycle(21)).unwrap();
        assert_eq!(separated_set(&c21, 1).as_slice(), &[0, 3, 6, 9, 12, 15, 18]);
        let k5 = named(&NamedGraph::Complete(5)).unwrap();
        assert_eq!(separated_set(&k5, 1).as_slice(), &[0]);
        let pet = named(&NamedGraph::Petersen).unwrap();
        assert_eq!(separated_set(&pet, 0).len(), 10);
        // BFS re-check of the separation on the cycle
        let s = separated_set(&c21, 1);
        for &a in s.as_slice() {
            let dist = c21.distances_from(a);
            for &b in s.as_slice() {
                assert!(a == b || dist[b].unwrap() >= 3);
            }
        }
    }

    #[test]
    fn cycle_partition() {
        let c21 = named(&NamedGraph::Cycle(21)).unwrap();
        let s = separated_set(&c21, 1);
        let tpm = tree_partition(&c21, &s, 1).unwrap();
        assert_eq!(tpm.quotient.n(), 7);
        assert_eq!(tpm.quotient.m(), 7);
        assert_eq!(tpm.quotient.min_degree(), 2);
        assert!(tpm.check_balls(&c21).is_ok());
        for i in 0..7 {
            assert_eq!(tpm.part(i).len(), 3);
        }
        let q = InducedCycleCert::new(vec![0, 1, 2, 3, 4, 5, 6]);
        let lifted = lift_cycle(&c21, &tpm, &q).unwrap();
        assert_eq!(lifted.length(), 21);
    }

    #[test]
    fn radius_zero_is_identity() {
        let pet = named(&NamedGraph::Petersen).unwrap();
        let tpm = tree_partition(&pet, &separated_set(&pet, 0), 0).unwrap();
        assert_eq!(tpm.quotient, pet);
        let q = InducedCycleCert::new(vec![0, 1, 2, 3, 4]);
        assert_eq!(lift_cycle(&pet, &tpm, &q).unwrap(), q);
    }

    #[test]
    fn sharp_cases() {
        let c5 = named(&NamedGraph::Cycle(5)).unwrap();
        assert_eq!(long_induced_cycle(&c5, 0).unwrap().length(), 5);
        let pet = named(&NamedGraph::Petersen).unwrap();
        assert_eq!(long_induced_cycle(&pet, 0).unwrap().length(), 6);
        let c21 = named(&NamedGraph::Cycle(21)).unwrap();
        assert_eq!(long_induced_cycle(&c21, 1).unwrap().length(), 21);
        assert_eq!(long_cycle_bound(3, 0), 6);
        assert_eq!(long_cycle_bound(2, 1), 5);
    }

    #[test]
    fn audits_catch_bad_partitions() {
        // k = 1 on C5 breaks the girth requirement: one part is not a tree
        // or two parts share two edges
        let c5 = named(&NamedGraph::Cycle(5)).unwrap();
        let s = separated_set(&c5, 1);
        assert!(matches!(
            tree_partition(&c5, &s, 1),
            Err(StructureError::GirthViolation(_))
        ));
        let pet = named(&NamedGraph::Petersen).unwrap();
        assert!(matches!(
            long_induced_cycle(&pet, 1),
            Err(StructureError::PreconditionFailed(_))
        ));
    }
}
