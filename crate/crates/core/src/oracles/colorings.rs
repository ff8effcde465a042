//! Enumeration of proper colourings up to renaming of colours.
//!
//! A colouring is canonical when its classes appear in order of their least
//! vertex, i.e. the colour sequence read in vertex order is a restricted
//! growth string: vertex `v` gets a colour at most one more than the largest
//! colour among `0..v`.

use super::{chromatic_number, limits, Meter, SearchBudget, SearchError};
use crate::coloring::ProperColoring;
use crate::graph::Graph;

/// Pull iterator over the canonical proper colourings of `g` using exactly
/// `k` colours. Yields `Err` once if the node budget runs out, then stops.
pub struct CanonicalColorings<'g> {
    g: &'g Graph,
    k: u32,
    colors: Vec<u32>,
    /// `prefix_max[i]`: largest colour among vertices `0..=i`.
    prefix_max: Vec<u32>,
    pos: usize,
    meter: Meter,
    started: bool,
    done: bool,
}

impl<'g> CanonicalColorings<'g> {
    fn new(g: &'g Graph, k: usize, meter: Meter) -> Self {
        let n = g.n();
        CanonicalColorings {
            g,
            k: k as u32,
            colors: vec![0; n],
            prefix_max: vec![0; n],
            pos: 0,
            meter,
            started: false,
            done: false,
        }
    }

    fn admissible(&self, v: usize, c: u32) -> bool {
        let before = if v == 0 { 0 } else { self.prefix_max[v - 1] };
        if c > before + 1 || c > self.k {
            return false;
        }
        // enough vertices left to open the missing colours
        let reached = before.max(c);
        let remaining = (self.g.n() - v - 1) as u32;
        if reached + remaining < self.k {
            return false;
        }
        self.g
            .neighbors(v)
            .iter()
            .all(|&w| w > v || self.colors[w] != c)
    }

    /// Advances to the next complete colouring; `false` when exhausted.
    fn advance(&mut self) -> Result<bool, SearchError> {
        let n = self.g.n();
        if !self.started {
            self.started = true;
            if n == 0 {
                return Ok(self.k == 0);
            }
        } else {
            if n == 0 {
                return Ok(false);
            }
            self.pos = n - 1;
        }
        loop {
            self.meter.tick()?;
            let v = self.pos;
            let next = (self.colors[v] + 1..=self.k).find(|&c| self.admissible(v, c));
            match next {
                Some(c) => {
                    self.colors[v] = c;
                    let before = if v == 0 { 0 } else { self.prefix_max[v - 1] };
                    self.prefix_max[v] = before.max(c);
                    if v + 1 == n {
                        return Ok(true);
                    }
                    self.pos += 1;
                    self.colors[self.pos] = 0;
                }
                None => {
                    self.colors[v] = 0;
                    if v == 0 {
                        return Ok(false);
                    }
                    self.pos -= 1;
                }
            }
        }
    }
}

impl Iterator for CanonicalColorings<'_> {
    type Item = Result<ProperColoring, SearchError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.advance() {
            Ok(true) => Some(Ok(ProperColoring::new(self.g, self.colors.clone())
                .expect("enumerated colourings are proper"))),
            Ok(false) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

/// Canonical colourings with exactly `k` colours.
pub fn colorings_with_exactly<'g>(
    g: &'g Graph,
    k: usize,
    budget: &SearchBudget,
) -> Result<CanonicalColorings<'g>, SearchError> {
    budget.admit(g, limits::COLORING_ENUMERATION)?;
    Ok(CanonicalColorings::new(g, k, budget.meter()))
}

/// Canonical colourings with exactly `chi(g)` colours.
pub fn enumerate_optimal_colorings<'g>(
    g: &'g Graph,
    budget: &SearchBudget,
) -> Result<CanonicalColorings<'g>, SearchError> {
    budget.admit(g, limits::COLORING_ENUMERATION)?;
    let chi = chromatic_number(g, &budget.clone().with_max_n(g.n()))?.value;
    Ok(CanonicalColorings::new(g, chi, budget.meter()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gnp, named, NamedGraph, Seed};

    fn count(g: &Graph) -> usize {
        enumerate_optimal_colorings(g, &SearchBudget::default())
            .unwrap()
            .collect::<Result<Vec<_>, _>>()
            .unwrap()
            .len()
    }

    /// Counts every proper colouring with exactly k colours over `k^n`
    /// assignments, divided by `k!` to quotient colour renaming.
    fn brute_canonical_count(g: &Graph, k: usize) -> usize {
        let n = g.n();
        let mut total = 0;
        for mut code in 0..(k as u64).pow(n as u32) {
            let mut col = vec![0; n];
            for c in col.iter_mut() {
                *c = code % k as u64;
                code /= k as u64;
            }
            let used = col.iter().collect::<std::collections::BTreeSet<_>>().len();
            if used == k && g.edges().all(|(u, v)| col[u] != col[v]) {
                total += 1;
            }
        }
        total / (1..=k).product::<usize>()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(&named(&NamedGraph::Path(3)).unwrap()), 1);
        let c5 = named(&NamedGraph::Cycle(5)).unwrap();
        assert_eq!(count(&c5), 5);
        assert_eq!(brute_canonical_count(&c5, 3), 5);
        assert_eq!(count(&named(&NamedGraph::Complete(3)).unwrap()), 1);
        assert_eq!(count(&Graph::empty(0)), 1);
    }

    #[test]
    fn path3_coloring_shape() {
        let p3 = named(&NamedGraph::Path(3)).unwrap();
        let all: Vec<_> = enumerate_optimal_colorings(&p3, &SearchBudget::default())
            .unwrap()
            .map(|c| c.unwrap().colors().to_vec())
            .collect();
        assert_eq!(all, vec![vec![1, 2, 1]]);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        for s in 0..20 {
            let g = gnp(7, 0.4, Seed(s)).unwrap();
            for k in 1..=4 {
                let got = colorings_with_exactly(&g, k, &SearchBudget::default())
                    .unwrap()
                    .collect::<Result<Vec<_>, _>>()
                    .unwrap()
                    .len();
                assert_eq!(got, brute_canonical_count(&g, k), "seed {s} k {k}");
            }
        }
    }

    #[test]
    fn canonical_and_distinct() {
        let g = named(&NamedGraph::Petersen).unwrap();
        let all: Vec<Vec<u32>> = enumerate_optimal_colorings(&g, &SearchBudget::default())
            .unwrap()
            .map(|c| c.unwrap().colors().to_vec())
            .collect();
        assert!(!all.is_empty());
        let distinct: std::collections::BTreeSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        for col in &all {
            let mut max = 0;
            for &c in col {
                assert!(c <= max + 1);
                max = max.max(c);
            }
            assert_eq!(max, 3);
        }
    }

    #[test]
    fn budget_stops_the_stream() {
        let g = named(&NamedGraph::Petersen).unwrap();
        let mut it = colorings_with_exactly(&g, 3, &SearchBudget::nodes(5)).unwrap();
        assert!(matches!(
            it.next(),
            Some(Err(SearchError::NodeLimit { .. }))
        ));
        assert!(it.next().is_none());
        assert!(colorings_with_exactly(&Graph::empty(17), 1, &SearchBudget::default()).is_err());
    }
}
