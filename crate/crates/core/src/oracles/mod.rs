//! Exact exponential-time searches for small graphs.
//!
//! Every search is deterministic and metered by a [`SearchBudget`]. Running
//! out of budget is reported as an error and never as an answer.

mod chromatic;
mod clique;
mod colorings;
mod paths;

use thiserror::Error;

use crate::graph::Graph;

pub use chromatic::{chromatic_bounds, chromatic_number, ChromaticBounds, ChromaticNumber};
pub use clique::{independence_number, max_clique, max_rainbow_independent_set, IndependentSet};
pub use colorings::{colorings_with_exactly, enumerate_optimal_colorings, CanonicalColorings};
pub use paths::{
    longest_induced_cycle, longest_induced_cycle_unpruned, longest_induced_path,
    longest_induced_path_unpruned, max_rainbow_induced_path,
};

/// Default admission limits per search.
pub mod limits {
    pub const CHROMATIC: usize = 40;
    pub const INDEPENDENCE: usize = 40;
    pub const INDUCED_PATH: usize = 30;
    pub const INDUCED_CYCLE: usize = 30;
    pub const RAINBOW_PATH: usize = 24;
    pub const COLORING_ENUMERATION: usize = 16;
    /// Hard ceiling of the 128-bit mask kernels.
    pub const MASK_KERNEL: usize = 128;
}

pub const DEFAULT_MAX_NODES: u64 = 200_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    /// Search-tree node limit.
    pub max_nodes: u64,
    /// Vertex-count admission limit; `None` means the per-search default.
    pub max_n: Option<usize>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: DEFAULT_MAX_NODES,
            max_n: None,
        }
    }
}

impl SearchBudget {
    pub fn new(max_nodes: u64, max_n: Option<usize>) -> Self {
        SearchBudget { max_nodes, max_n }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes,
            max_n: None,
        }
    }

    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = Some(max_n);
        self
    }

    pub(crate) fn admit(&self, g: &Graph, default: usize) -> Result<(), SearchError> {
        let max_n = self.max_n.unwrap_or(default);
        if g.n() > max_n {
            return Err(SearchError::TooLarge { n: g.n(), max_n });
        }
        Ok(())
    }

    pub(crate) fn admit_masked(&self, g: &Graph, default: usize) -> Result<(), SearchError> {
        self.admit(g, default)?;
        if g.n() > limits::MASK_KERNEL {
            return Err(SearchError::TooLarge {
                n: g.n(),
                max_n: limits::MASK_KERNEL,
            });
        }
        Ok(())
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            used: 0,
            limit: self.max_nodes,
        }
    }
}

/// Both variants mean the budget was exceeded; neither implies an answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget exceeded ({limit} nodes)")]
    NodeLimit { limit: u64 },
    #[error("graph on {n} vertices exceeds the admission limit {max_n}")]
    TooLarge { n: usize, max_n: usize },
}

#[derive(Debug)]
pub(crate) struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), SearchError> {
        self.used += 1;
        if self.used > self.limit {
            Err(SearchError::NodeLimit { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

pub(crate) type Mask = u128;

pub(crate) fn masks(g: &Graph) -> Vec<Mask> {
    debug_assert!(g.n() <= limits::MASK_KERNEL);
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | bit(w)))
        .collect()
}

#[inline]
pub(crate) fn bit(v: usize) -> Mask {
    1u128 << v
}

#[inline]
pub(crate) fn all_below(n: usize) -> Mask {
    if n >= 128 {
        Mask::MAX
    } else {
        (1u128 << n) - 1
    }
}

pub(crate) fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}
