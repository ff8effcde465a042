//! Longest induced paths and cycles by depth-first extension.
//!
//! A path grows at its tail only. `blocked` holds the path itself and the
//! neighbourhoods of all path vertices except the tail, so the admissible
//! extensions are exactly `N(tail) \ blocked`.

use super::{all_below, bit, bits, limits, masks, Mask, Meter, SearchBudget, SearchError};
use crate::certificate::{InducedCycleCert, InducedPathCert};
use crate::coloring::ProperColoring;
use crate::graph::Graph;

struct PathSearch<'a> {
    adj: &'a [Mask],
    /// Dense colour index per vertex, when rainbow paths are required.
    colors: Option<&'a [usize]>,
    /// Prune by endpoint symmetry and by the remaining-vertex bound.
    pruned: bool,
    best: Vec<usize>,
    meter: Meter,
}

impl PathSearch<'_> {
    fn dfs(
        &mut self,
        path: &mut Vec<usize>,
        blocked: Mask,
        used_colors: Mask,
    ) -> Result<(), SearchError> {
        self.meter.tick()?;
        let tail = *path.last().unwrap();
        let canonical = path.len() == 1 || path[0] < tail;
        if (!self.pruned || canonical) && path.len() > self.best.len() {
            self.best.clone_from(path);
        }
        let mut cands = self.adj[tail] & !blocked;
        if let Some(colors) = self.colors {
            cands = bits(cands)
                .filter(|&w| used_colors & bit(colors[w]) == 0)
                .fold(0, |m, w| m | bit(w));
        }
        if self.pruned {
            let room = (all_below(self.adj.len()) & !blocked).count_ones() as usize;
            let color_room = self
                .colors
                .map(|_| 128 - used_colors.count_ones() as usize)
                .unwrap_or(usize::MAX);
            if path.len() + room.min(color_room) <= self.best.len() {
                return Ok(());
            }
        }
        let next_blocked = blocked | self.adj[tail];
        for w in bits(cands) {
            path.push(w);
            let used = self.colors.map_or(0, |c| used_colors | bit(c[w]));
            self.dfs(path, next_blocked | bit(w), used)?;
            path.pop();
        }
        Ok(())
    }
}

fn path_search(
    g: &Graph,
    budget: &SearchBudget,
    default_n: usize,
    colors: Option<&[usize]>,
    pruned: bool,
) -> Result<InducedPathCert, SearchError> {
    budget.admit_masked(g, default_n)?;
    let adj = masks(g);
    let mut search = PathSearch {
        adj: &adj,
        colors,
        pruned,
        best: Vec::new(),
        meter: budget.meter(),
    };
    for s in g.vertices() {
        let used = colors.map_or(0, |c| bit(c[s]));
        search.dfs(&mut vec![s], bit(s), used)?;
    }
    Ok(InducedPathCert::new(search.best))
}

/// A maximum-order induced path. Empty for the empty graph.
pub fn longest_induced_path(
    g: &Graph,
    budget: &SearchBudget,
) -> Result<InducedPathCert, SearchError> {
    path_search(g, budget, limits::INDUCED_PATH, None, true)
}

/// Same search without symmetry or bound pruning; the reference for
/// [`longest_induced_path`].
pub fn longest_induced_path_unpruned(
    g: &Graph,
    budget: &SearchBudget,
) -> Result<InducedPathCert, SearchError> {
    path_search(g, budget, limits::INDUCED_PATH, None, false)
}

/// A maximum-order induced path whose vertices carry distinct colours.
pub fn max_rainbow_induced_path(
    g: &Graph,
    c: &ProperColoring,
    budget: &SearchBudget,
) -> Result<InducedPathCert, SearchError> {
    let dense = c.dense_indices();
    path_search(g, budget, limits::RAINBOW_PATH, Some(&dense), true)
}

struct CycleSearch<'a> {
    adj: &'a [Mask],
    pruned: bool,
    best: Vec<usize>,
    meter: Meter,
}

impl CycleSearch<'_> {
    /// `path = [s, p2, ..., tail]`; `blocked` = path, vertices excluded for
    /// this start, and neighbourhoods of the inner vertices `p2..tail-1`.
    fn dfs(
        &mut self,
        path: &mut Vec<usize>,
        blocked: Mask,
        allowed: Mask,
    ) -> Result<(), SearchError> {
        self.meter.tick()?;
        let s = path[0];
        let tail = *path.last().unwrap();
        let cands = self.adj[tail] & !blocked & allowed;
        if self.pruned {
            let room = (allowed & !blocked).count_ones() as usize;
            if path.len() + room <= self.best.len() {
                return Ok(());
            }
        }
        for w in bits(cands) {
            if self.adj[s] & bit(w) != 0 {
                if path.len() + 1 > self.best.len() {
                    self.best.clone_from(path);
                    self.best.push(w);
                }
                continue;
            }
            path.push(w);
            let inner = if path.len() > 2 { self.adj[tail] } else { 0 };
            self.dfs(path, blocked | inner | bit(w), allowed)?;
            path.pop();
        }
        Ok(())
    }

    fn start(&mut self, s: usize, allowed: Mask) -> Result<(), SearchError> {
        for p2 in bits(self.adj[s] & allowed) {
            let mut path = vec![s, p2];
            self.dfs(&mut path, bit(s) | bit(p2), allowed)?;
        }
        Ok(())
    }
}

fn cycle_search(
    g: &Graph,
    budget: &SearchBudget,
    pruned: bool,
) -> Result<Option<InducedCycleCert>, SearchError> {
    budget.admit_masked(g, limits::INDUCED_CYCLE)?;
    let adj = masks(g);
    let n = g.n();
    let mut search = CycleSearch {
        adj: &adj,
        pruned,
        best: Vec::new(),
        meter: budget.meter(),
    };
    for s in 0..n {
        // pruned: the cycle's least vertex is `s`
        let allowed = if pruned {
            all_below(n) & !all_below(s)
        } else {
            all_below(n)
        };
        search.start(s, allowed)?;
    }
    Ok((!search.best.is_empty()).then(|| InducedCycleCert::new(search.best)))
}

/// A maximum-length induced cycle, `None` for forests.
pub fn longest_induced_cycle(
    g: &Graph,
    budget: &SearchBudget,
) -> Result<Option<InducedCycleCert>, SearchError> {
    cycle_search(g, budget, true)
}

pub fn longest_induced_cycle_unpruned(
    g: &Graph,
    budget: &SearchBudget,
) -> Result<Option<InducedCycleCert>, SearchError> {
    cycle_search(g, budget, false)
}
