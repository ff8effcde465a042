use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::StructureError;
use crate::bitset::BitSet;
use crate::certificate::ForestEmbeddingCert;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("vertex {vertex} out of range for a forest on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {0},{1} is a loop or repeated")]
    BadEdge(usize, usize),
    #[error("edge {0},{1} closes a cycle")]
    Cycle(usize, usize),
    #[error("{roots} roots given for {components} components")]
    RootCount { roots: usize, components: usize },
    #[error("roots {0} and {1} lie in the same component")]
    SharedComponent(usize, usize),
}

/// A forest with one chosen root per component. `roots[i]` is the root of
/// the `i`-th component in the order given by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ForestParts", into = "ForestParts")]
pub struct ForestSpec {
    n: usize,
    edges: Vec<(usize, usize)>,
    roots: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ForestParts {
    n: usize,
    edges: Vec<(usize, usize)>,
    roots: Vec<usize>,
}

impl TryFrom<ForestParts> for ForestSpec {
    type Error = ForestError;

    fn try_from(p: ForestParts) -> Result<Self, ForestError> {
        ForestSpec::new(p.n, p.edges, p.roots)
    }
}

impl From<ForestSpec> for ForestParts {
    fn from(f: ForestSpec) -> Self {
        ForestParts {
            n: f.n,
            edges: f.edges,
            roots: f.roots,
        }
    }
}

impl ForestSpec {
    pub fn new(
        n: usize,
        edges: Vec<(usize, usize)>,
        roots: Vec<usize>,
    ) -> Result<Self, ForestError> {
        let mut adj = vec![Vec::new(); n];
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(ForestError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v || adj[u].contains(&v) {
                return Err(ForestError::BadEdge(u, v));
            }
            let (a, b) = (find(&mut uf, u), find(&mut uf, v));
            if a == b {
                return Err(ForestError::Cycle(u, v));
            }
            uf[a] = b;
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let components = (0..n).filter(|&x| find(&mut uf, x) == x).count();
        if roots.len() != components {
            return Err(ForestError::RootCount {
                roots: roots.len(),
                components,
            });
        }
        let mut owner = vec![None; n];
        for &r in &roots {
            if r >= n {
                return Err(ForestError::VertexOutOfRange { vertex: r, n });
            }
            let c = find(&mut uf, r);
            if let Some(other) = owner[c] {
                return Err(ForestError::SharedComponent(other, r));
            }
            owner[c] = Some(r);
        }
        Ok(ForestSpec {
            n,
            edges,
            roots,
            adj,
        })
    }

    /// Forest without edges: every vertex is its own root.
    pub fn isolated(n: usize) -> Self {
        ForestSpec::new(n, Vec::new(), (0..n).collect()).expect("edgeless forest")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn components(&self) -> usize {
        self.roots.len()
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.adj[x].binary_search(&y).is_ok()
    }

    /// Every forest on exactly `n` vertices (labelled), with each choice of
    /// roots. Only meant for tiny `n`.
    pub fn all_rooted(n: usize) -> Vec<ForestSpec> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut out = Vec::new();
        for mask in 0u64..1 << pairs.len() {
            let edges: Vec<_> = (0..pairs.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            // discover components with placeholder roots, then vary them
            let comps = match components_of(n, &edges) {
                Some(c) => c,
                None => continue,
            };
            let mut choice = vec![0usize; comps.len()];
            loop {
                let roots = comps.iter().zip(&choice).map(|(c, &i)| c[i]).collect();
                out.push(
                    ForestSpec::new(n, edges.clone(), roots).expect("acyclic by construction"),
                );
                let mut i = 0;
                while i < comps.len() {
                    choice[i] += 1;
                    if choice[i] < comps[i].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == comps.len() {
                    break;
                }
            }
        }
        out
    }
}

/// Components ordered by least vertex, or `None` if `edges` has a cycle.
fn components_of(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let g = Graph::new(n, edges.iter().copied()).ok()?;
    (g.m() + g.components().len() == n).then(|| g.components())
}

/// Maps each root onto its anchor and grows the forest breadth-first: a
/// processed pair `(u, v)` sends the unmapped forest neighbours of `u` to the
/// least-indexed live neighbours of `v` that touch no other pending anchor,
/// then deletes `v` and its unused neighbours.
pub fn embed_rooted_forest(
    g: &Graph,
    spec: &ForestSpec,
    anchors: &[usize],
) -> Result<ForestEmbeddingCert, StructureError> {
    let fail = |msg: String| Err(StructureError::PreconditionFailed(msg));
    if anchors.len() != spec.components() {
        return fail(format!(
            "{} anchors for {} forest components",
            anchors.len(),
            spec.components()
        ));
    }
    if let Some(&a) = anchors.iter().find(|&&a| a >= g.n()) {
        return fail(format!("anchor {a} is not a vertex"));
    }
    let mut sorted = anchors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != anchors.len() || !g.is_independent(anchors) {
        return fail("anchors are not an independent set of distinct vertices".into());
    }
    if spec.n() > g.min_degree() {
        return fail(format!(
            "forest has {} vertices, minimum degree is {}",
            spec.n(),
            g.min_degree()
        ));
    }
    if !g.girth().at_least(5) {
        return fail(format!("girth {} is below 5", g.girth()));
    }

    let mut alive = BitSet::full(g.n());
    let mut map: Vec<Option<usize>> = vec![None; spec.n()];
    let mut pending_host = BitSet::new(g.n());
    let mut queue = VecDeque::new();
    for (&u, &v) in spec.roots().iter().zip(anchors) {
        map[u] = Some(v);
        pending_host.insert(v);
        queue.push_back((u, v));
    }
    while let Some((u, v)) = queue.pop_front() {
        pending_host.remove(v);
        let children: Vec<usize> = spec
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&x| map[x].is_none())
            .collect();
        let admissible: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| alive.contains(w) && !g.row(w).intersects(&pending_host))
            .collect();
        if admissible.len() < children.len() {
            return Err(StructureError::EmbeddingFailed {
                forest_vertex: u,
                host_vertex: v,
                needed: children.len(),
                available: admissible.len(),
                partial: map,
            });
        }
        alive.remove(v);
        for &w in g.neighbors(v) {
            alive.remove(w);
        }
        for (&x, &w) in children.iter().zip(&admissible) {
            map[x] = Some(w);
            alive.insert(w);
            pending_host.insert(w);
            queue.push_back((x, w));
        }
    }
    let cert = ForestEmbeddingCert {
        map: map
            .into_iter()
            .map(|m| m.expect("every component has a root"))
            .collect(),
    };
    cert.validate(g, spec, anchors)
        .map_err(StructureError::Invalid)?;
    Ok(cert)
}
