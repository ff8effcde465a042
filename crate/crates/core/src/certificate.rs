//! Self-checking witnesses. Every construction in this crate returns one of
//! these, and every one is re-validated against its host graph.
//!
//! Length conventions: a path's *order* is its vertex count and its *length*
//! is its edge count. A cycle's length equals its vertex count.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::ProperColoring;
use crate::graph::{Graph, VertexSet};
use crate::oracles::{self, SearchBudget};
use crate::structures::ForestSpec;

/// The first condition a certificate fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("vertex {0} is not a vertex of the graph")]
    OutOfRange(usize),
    #[error("vertex {0} appears more than once")]
    Repeated(usize),
    #[error("{got} vertices, at least {min} required")]
    TooShort { got: usize, min: usize },
    #[error("{0},{1} non-adjacent")]
    MissingEdge(usize, usize),
    #[error("chord {0},{1}")]
    Chord(usize, usize),
    #[error("{0},{1} adjacent in an independent set")]
    NotIndependent(usize, usize),
    #[error("{0},{1} share colour {2}")]
    ColorRepeated(usize, usize, u32),
    #[error("coloring covers {got} vertices, graph has {expected}")]
    ColoringMismatch { expected: usize, got: usize },
    #[error("stored chromatic number {stored}, actual {actual}")]
    ChromaticMismatch { stored: usize, actual: usize },
    #[error("chromatic number of the witness could not be decided within budget")]
    Undecided,
    #[error("map has {got} entries, forest has {expected} vertices")]
    MapSize { expected: usize, got: usize },
    #[error("forest vertices {0} and {1} map to the same vertex")]
    NotInjective(usize, usize),
    #[error("forest edge {0},{1} is not mapped to an edge")]
    EdgeNotPreserved(usize, usize),
    #[error("forest non-edge {0},{1} is mapped to an edge")]
    NonEdgeNotPreserved(usize, usize),
    #[error("root {root} is mapped to {got}, expected anchor {anchor}")]
    RootNotAnchored {
        root: usize,
        anchor: usize,
        got: usize,
    },
}

fn check_distinct(g: &Graph, vs: &[usize]) -> Result<(), Violation> {
    let mut seen = vec![false; g.n()];
    for &v in vs {
        if v >= g.n() {
            return Err(Violation::OutOfRange(v));
        }
        if seen[v] {
            return Err(Violation::Repeated(v));
        }
        seen[v] = true;
    }
    Ok(())
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// An induced path `p_1, ..., p_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InducedPathCert {
    pub vertices: Vec<usize>,
}

impl InducedPathCert {
    pub fn new(vertices: Vec<usize>) -> Self {
        InducedPathCert { vertices }
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn validate(&self, g: &Graph) -> Result<(), Violation> {
        let vs = &self.vertices;
        if vs.is_empty() {
            return Err(Violation::TooShort { got: 0, min: 1 });
        }
        check_distinct(g, vs)?;
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let (a, b) = (vs[i], vs[j]);
                let adj = g.adjacent(a, b);
                if j == i + 1 && !adj {
                    let (x, y) = ordered(a, b);
                    return Err(Violation::MissingEdge(x, y));
                }
                if j > i + 1 && adj {
                    let (x, y) = ordered(a, b);
                    return Err(Violation::Chord(x, y));
                }
            }
        }
        Ok(())
    }

    pub fn is_rainbow(&self, c: &ProperColoring) -> bool {
        c.is_rainbow(&self.vertices)
    }
}

/// An induced cycle, listed in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InducedCycleCert {
    pub vertices: Vec<usize>,
}

impl InducedCycleCert {
    pub fn new(vertices: Vec<usize>) -> Self {
        InducedCycleCert { vertices }
    }

    pub fn length(&self) -> usize {
        self.vertices.len()
    }

    pub fn validate(&self, g: &Graph) -> Result<(), Violation> {
        let vs = &self.vertices;
        let l = vs.len();
        if l < 3 {
            return Err(Violation::TooShort { got: l, min: 3 });
        }
        check_distinct(g, vs)?;
        for i in 0..l {
            for j in i + 1..l {
                let consecutive = j == i + 1 || (i == 0 && j == l - 1);
                let adj = g.adjacent(vs[i], vs[j]);
                let (x, y) = ordered(vs[i], vs[j]);
                if consecutive && !adj {
                    return Err(Violation::MissingEdge(x, y));
                }
                if !consecutive && adj {
                    return Err(Violation::Chord(x, y));
                }
            }
        }
        Ok(())
    }
}

/// An independent set whose members carry pairwise distinct colours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowSetCert {
    pub members: VertexSet,
    /// Colour of each member, in member order.
    pub colors: Vec<u32>,
}

impl RainbowSetCert {
    pub fn new(members: VertexSet, c: &ProperColoring) -> Self {
        let colors = members.iter().map(|v| c.color(v)).collect();
        RainbowSetCert { members, colors }
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn validate(&self, g: &Graph, c: &ProperColoring) -> Result<(), Violation> {
        if c.len() != g.n() {
            return Err(Violation::ColoringMismatch {
                expected: g.n(),
                got: c.len(),
            });
        }
        let vs = self.members.as_slice();
        check_distinct(g, vs)?;
        check_rainbow(vs, c)?;
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if g.adjacent(u, v) {
                    return Err(Violation::NotIndependent(u, v));
                }
            }
        }
        Ok(())
    }
}

fn check_rainbow(vs: &[usize], c: &ProperColoring) -> Result<(), Violation> {
    let mut first: BTreeMap<u32, usize> = BTreeMap::new();
    for &v in vs {
        if let Some(&u) = first.get(&c.color(v)) {
            return Err(Violation::ColorRepeated(u, v, c.color(v)));
        }
        first.insert(c.color(v), v);
    }
    Ok(())
}

/// A rainbow vertex set together with the exact chromatic number of the
/// subgraph it induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyCert {
    pub members: VertexSet,
    pub chromatic_bound: usize,
}

impl DiscrepancyCert {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn validate(&self, g: &Graph, c: &ProperColoring) -> Result<(), Violation> {
        self.validate_with(g, c, &SearchBudget::default())
    }

    pub fn validate_with(
        &self,
        g: &Graph,
        c: &ProperColoring,
        budget: &SearchBudget,
    ) -> Result<(), Violation> {
        let vs = self.members.as_slice();
        check_distinct(g, vs)?;
        check_rainbow(vs, c)?;
        let (h, _) = g.induced_subgraph(&self.members);
        let budget = budget
            .clone()
            .with_max_n(budget.max_n.unwrap_or(0).max(h.n()));
        let actual = oracles::chromatic_number(&h, &budget)
            .map_err(|_| Violation::Undecided)?
            .value;
        if actual != self.chromatic_bound {
            return Err(Violation::ChromaticMismatch {
                stored: self.chromatic_bound,
                actual,
            });
        }
        Ok(())
    }
}

/// Injective map from forest vertices into the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestEmbeddingCert {
    pub map: Vec<usize>,
}

impl ForestEmbeddingCert {
    /// Checks injectivity, that the image induces exactly the forest, and
    /// that each root lands on its anchor.
    pub fn validate(
        &self,
        g: &Graph,
        spec: &ForestSpec,
        anchors: &[usize],
    ) -> Result<(), Violation> {
        if self.map.len() != spec.n() {
            return Err(Violation::MapSize {
                expected: spec.n(),
                got: self.map.len(),
            });
        }
        let mut preimage = BTreeMap::new();
        for (x, &v) in self.map.iter().enumerate() {
            if v >= g.n() {
                return Err(Violation::OutOfRange(v));
            }
            if let Some(&y) = preimage.get(&v) {
                return Err(Violation::NotInjective(y, x));
            }
            preimage.insert(v, x);
        }
        for x in 0..spec.n() {
            for y in x + 1..spec.n() {
                let in_forest = spec.adjacent(x, y);
                let in_host = g.adjacent(self.map[x], self.map[y]);
                if in_forest && !in_host {
                    return Err(Violation::EdgeNotPreserved(x, y));
                }
                if !in_forest && in_host {
                    return Err(Violation::NonEdgeNotPreserved(x, y));
                }
            }
        }
        for (&root, &anchor) in spec.roots().iter().zip(anchors) {
            if self.map[root] != anchor {
                return Err(Violation::RootNotAnchored {
                    root,
                    anchor,
                    got: self.map[root],
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for InducedCycleCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named, NamedGraph};

    #[test]
    fn cycle_and_path_examples() {
        let g = named(&NamedGraph::Cycle(5)).unwrap();
        assert_eq!(
            InducedCycleCert::new(vec![0, 1, 2, 3, 4]).validate(&g),
            Ok(())
        );
        assert_eq!(InducedPathCert::new(vec![0, 1, 2, 3]).validate(&g), Ok(()));
        let bad = InducedCycleCert::new(vec![0, 1, 2])
            .validate(&g)
            .unwrap_err();
        assert_eq!(bad, Violation::MissingEdge(0, 2));
        assert_eq!(bad.to_string(), "0,2 non-adjacent");
        assert_eq!(
            InducedPathCert::new(vec![4, 0, 1, 2, 3]).validate(&g),
            Err(Violation::Chord(3, 4))
        );
        assert_eq!(
            InducedPathCert::new(vec![0, 1, 0]).validate(&g),
            Err(Violation::Repeated(0))
        );
        assert_eq!(
            InducedCycleCert::new(vec![0, 1]).validate(&g),
            Err(Violation::TooShort { got: 2, min: 3 })
        );
    }

    #[test]
    fn validation_is_idempotent() {
        let g = named(&NamedGraph::Petersen).unwrap();
        let cert = InducedCycleCert::new(vec![0, 1, 2, 3, 4]);
        let a = cert.validate(&g);
        let b = cert.validate(&g);
        assert_eq!(a, b);
    }

    #[test]
    fn rainbow_set_checks() {
        let g = named(&NamedGraph::Cycle(5)).unwrap();
        let c = ProperColoring::new(&g, vec![1, 2, 1, 2, 3]).unwrap();
        assert!(RainbowSetCert::new(VertexSet::new([0, 3]), &c)
            .validate(&g, &c)
            .is_ok());
        assert_eq!(
            RainbowSetCert::new(VertexSet::new([0, 2]), &c).validate(&g, &c),
            Err(Violation::ColorRepeated(0, 2, 1))
        );
        assert_eq!(
            RainbowSetCert::new(VertexSet::new([0, 1]), &c).validate(&g, &c),
            Err(Violation::NotIndependent(0, 1))
        );
    }

    #[test]
    fn discrepancy_checks_exact_chi() {
        let g = named(&NamedGraph::Cycle(5)).unwrap();
        let c = ProperColoring::new(&g, vec![1, 2, 1, 2, 3]).unwrap();
        let monochromatic = DiscrepancyCert {
            members: VertexSet::new([0, 2, 4]),
            chromatic_bound: 2,
        };
        assert_eq!(
            monochromatic.validate(&g, &c),
            Err(Violation::ColorRepeated(0, 2, 1))
        );
        let good = DiscrepancyCert {
            members: VertexSet::new([1, 2, 4]),
            chromatic_bound: 2,
        };
        assert_eq!(good.validate(&g, &c), Ok(()));
        let wrong = DiscrepancyCert {
            members: VertexSet::new([1, 2, 4]),
            chromatic_bound: 1,
        };
        assert_eq!(
            wrong.validate(&g, &c),
            Err(Violation::ChromaticMismatch {
                stored: 1,
                actual: 2
            })
        );
    }
}
