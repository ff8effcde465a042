//! Proper vertex colourings with positive integer colours.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("colouring has {got} entries, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vertex {0} has colour 0; colours must be positive")]
    ZeroColor(usize),
    #[error("adjacent vertices {0} and {1} share colour {2}")]
    NotProper(usize, usize, u32),
}

/// A colouring checked to be proper against the graph it was built for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ProperColoring {
    colors: Vec<u32>,
}

impl ProperColoring {
    pub fn new(g: &Graph, colors: Vec<u32>) -> Result<Self, ColoringError> {
        if colors.len() != g.n() {
            return Err(ColoringError::LengthMismatch {
                expected: g.n(),
                got: colors.len(),
            });
        }
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::ZeroColor(v));
        }
        if let Some((u, v)) = g.edges().find(|&(u, v)| colors[u] == colors[v]) {
            return Err(ColoringError::NotProper(u, v, colors[u]));
        }
        Ok(ProperColoring { colors })
    }

    /// Greedy colouring in increasing vertex order.
    pub fn greedy(g: &Graph) -> Self {
        ProperColoring {
            colors: g.greedy_coloring(),
        }
    }

    #[inline]
    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Distinct colours in use.
    pub fn palette(&self) -> BTreeSet<u32> {
        self.colors.iter().copied().collect()
    }

    pub fn palette_size(&self) -> usize {
        self.palette().len()
    }

    /// Colour classes keyed by colour.
    pub fn classes(&self) -> BTreeMap<u32, Vec<usize>> {
        let mut out: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (v, &c) in self.colors.iter().enumerate() {
            out.entry(c).or_default().push(v);
        }
        out
    }

    /// Colours remapped to `0..palette_size`, in increasing colour order.
    pub fn dense_indices(&self) -> Vec<usize> {
        let palette: Vec<u32> = self.palette().into_iter().collect();
        self.colors
            .iter()
            .map(|c| palette.binary_search(c).unwrap())
            .collect()
    }

    /// True iff the vertices carry pairwise distinct colours.
    pub fn is_rainbow(&self, vs: &[usize]) -> bool {
        let mut seen = BTreeSet::new();
        vs.iter().all(|&v| seen.insert(self.colors[v]))
    }

    /// Restriction to a subgraph, given the new-to-old vertex map.
    pub fn restrict(&self, new_to_old: &[usize]) -> ProperColoring {
        ProperColoring {
            colors: new_to_old.iter().map(|&v| self.colors[v]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named, NamedGraph};

    #[test]
    fn validation() {
        let g = named(&NamedGraph::Cycle(5)).unwrap();
        assert!(ProperColoring::new(&g, vec![1, 2, 1, 2, 3]).is_ok());
        assert_eq!(
            ProperColoring::new(&g, vec![1, 2, 1, 2, 1]),
            Err(ColoringError::NotProper(0, 4, 1))
        );
        assert_eq!(
            ProperColoring::new(&g, vec![1, 2, 1, 2]),
            Err(ColoringError::LengthMismatch {
                expected: 5,
                got: 4
            })
        );
        assert_eq!(
            ProperColoring::new(&g, vec![1, 2, 1, 2, 0]),
            Err(ColoringError::ZeroColor(4))
        );
    }

    #[test]
    fn classes_and_rainbow() {
        let g = named(&NamedGraph::Cycle(5)).unwrap();
        let c = ProperColoring::new(&g, vec![1, 2, 1, 2, 3]).unwrap();
        assert_eq!(c.palette_size(), 3);
        assert_eq!(c.classes()[&1], vec![0, 2]);
        assert!(c.is_rainbow(&[0, 3]));
        assert!(!c.is_rainbow(&[0, 2]));
        assert_eq!(c.dense_indices(), vec![0, 1, 0, 1, 2]);
    }
}
