use serde::Serialize;

use super::{limits, Meter, SearchBudget, SearchError};
use crate::graph::{Graph, VertexSet};

/// Exact chromatic number with an optimal colouring (colours `1..=value`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChromaticNumber {
    pub value: usize,
    pub coloring: Vec<u32>,
}

/// Certified bounds `lower <= chi <= upper`; `coloring` attains `upper`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChromaticBounds {
    pub lower: usize,
    pub upper: usize,
    pub coloring: Vec<u32>,
    /// False when the node budget ran out before the bounds met.
    pub exhausted_budget: bool,
}

impl ChromaticBounds {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Exact chromatic number, or an error if the admission limit or node budget
/// is exceeded.
pub fn chromatic_number(g: &Graph, budget: &SearchBudget) -> Result<ChromaticNumber, SearchError> {
    budget.admit(g, limits::CHROMATIC)?;
    let b = chromatic_bounds(g, budget);
    if b.is_exact() {
        Ok(ChromaticNumber {
            value: b.upper,
            coloring: b.coloring,
        })
    } else {
        Err(SearchError::NodeLimit {
            limit: budget.max_nodes,
        })
    }
}

/// Iterated k-colourability per connected component, between a greedy clique
/// lower bound and a DSATUR upper bound. Never fails: when the budget runs out
/// the best certified bounds so far are returned. Ignores the admission limit.
pub fn chromatic_bounds(g: &Graph, budget: &SearchBudget) -> ChromaticBounds {
    let mut meter = budget.meter();
    let mut out = ChromaticBounds {
        lower: 0,
        upper: 0,
        coloring: vec![0; g.n()],
        exhausted_budget: false,
    };
    for comp in g.components() {
        let (h, map) = g.induced_subgraph(&VertexSet::new(comp));
        let (lo, hi, col) = component_bounds(&h, &mut meter, &mut out.exhausted_budget);
        out.lower = out.lower.max(lo);
        out.upper = out.upper.max(hi);
        for (v, c) in col.into_iter().enumerate() {
            out.coloring[map.to_old(v)] = c;
        }
    }
    out
}

/// Alternates between trying to colour with one colour fewer than the best
/// colouring so far and refuting the current lower bound, with a per-attempt
/// node cap that doubles each round, so that neither direction can starve
/// the other.
fn component_bounds(
    h: &Graph,
    meter: &mut Meter,
    exhausted: &mut bool,
) -> (usize, usize, Vec<u32>) {
    let (mut hi, mut best) = dsatur_greedy(h);
    let mut lo = greedy_clique(h);
    let mut cap = 1024u64;
    while lo < hi && !*exhausted {
        let mut capped = false;
        for k in [hi - 1, lo] {
            if lo >= hi || k < lo {
                continue;
            }
            match attempt(h, k, meter, cap) {
                Attempt::Colored(col) => {
                    hi = k;
                    best = col;
                }
                Attempt::Refuted => lo = k + 1,
                Attempt::Capped => capped = true,
                Attempt::OutOfBudget => {
                    *exhausted = true;
                    break;
                }
            }
        }
        if capped {
            cap = cap.saturating_mul(2);
        }
    }
    (lo, hi, best)
}

enum Attempt {
    Colored(Vec<u32>),
    Refuted,
    Capped,
    OutOfBudget,
}

fn attempt(h: &Graph, k: usize, meter: &mut Meter, cap: u64) -> Attempt {
    let room = meter.limit.saturating_sub(meter.used);
    let mut sub = Meter {
        used: 0,
        limit: cap.min(room),
    };
    let out = KColoring::new(h, k).run(&mut sub);
    meter.used += sub.used.min(sub.limit);
    match out {
        Ok(Some(col)) => Attempt::Colored(col),
        Ok(None) => Attempt::Refuted,
        Err(_) if cap < room => Attempt::Capped,
        Err(_) => Attempt::OutOfBudget,
    }
}

fn greedy_clique(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let mut best = 1;
    for v in g.vertices() {
        let mut cands: Vec<usize> = g.neighbors(v).to_vec();
        cands.sort_by_key(|&w| (std::cmp::Reverse(g.degree(w)), w));
        let mut clique = vec![v];
        for w in cands {
            if clique.iter().all(|&u| g.adjacent(u, w)) {
                clique.push(w);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// DSATUR without backtracking: highest saturation, then degree, then index.
fn dsatur_greedy(g: &Graph) -> (usize, Vec<u32>) {
    let n = g.n();
    let mut color = vec![0u32; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    let mut used = 0usize;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == 0)
            .max_by_key(|&v| (sat[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = (1..)
            .find(|&c| !seen[v].get(c).copied().unwrap_or(false))
            .unwrap();
        color[v] = c as u32;
        used = used.max(c);
        for &w in g.neighbors(v) {
            if seen[w].len() <= c {
                seen[w].resize(c + 1, false);
            }
            if !seen[w][c] {
                seen[w][c] = true;
                sat[w] += 1;
            }
        }
    }
    (used, color)
}

/// Backtracking k-colourability. Branches on the uncoloured vertex with the
/// fewest admissible colours (ties: larger degree, then smaller index); a
/// fresh colour is only ever tried once per node.
struct KColoring<'g> {
    g: &'g Graph,
    k: usize,
    color: Vec<usize>,
    /// `conflicts[v * k + c]`: coloured neighbours of `v` holding colour `c`.
    conflicts: Vec<u32>,
    used: usize,
}

const NONE: usize = usize::MAX;

impl<'g> KColoring<'g> {
    fn new(g: &'g Graph, k: usize) -> Self {
        KColoring {
            g,
            k,
            color: vec![NONE; g.n()],
            conflicts: vec![0; g.n() * k],
            used: 0,
        }
    }

    fn run(&mut self, meter: &mut Meter) -> Result<Option<Vec<u32>>, SearchError> {
        if self.k == 0 {
            return Ok((self.g.n() == 0).then(Vec::new));
        }
        if self.search(0, meter)? {
            Ok(Some(self.color.iter().map(|&c| c as u32 + 1).collect()))
        } else {
            Ok(None)
        }
    }

    fn admissible(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let limit = (self.used + 1).min(self.k);
        (0..limit).filter(move |&c| self.conflicts[v * self.k + c] == 0)
    }

    fn set(&mut self, v: usize, c: usize, delta: i32) {
        for &w in self.g.neighbors(v) {
            let slot = &mut self.conflicts[w * self.k + c];
            *slot = (*slot as i32 + delta) as u32;
        }
    }

    fn search(&mut self, colored: usize, meter: &mut Meter) -> Result<bool, SearchError> {
        let n = self.g.n();
        if colored == n {
            return Ok(true);
        }
        meter.tick()?;
        let mut pick = NONE;
        let mut pick_key = (usize::MAX, 0usize);
        for v in 0..n {
            if self.color[v] != NONE {
                continue;
            }
            let avail = self.admissible(v).count();
            if avail == 0 {
                return Ok(false);
            }
            let key = (avail, self.g.degree(v));
            if key.0 < pick_key.0 || (key.0 == pick_key.0 && key.1 > pick_key.1) {
                pick = v;
                pick_key = key;
            }
        }
        let choices: Vec<usize> = self.admissible(pick).collect();
        for c in choices {
            let saved_used = self.used;
            self.color[pick] = c;
            self.used = self.used.max(c + 1);
            self.set(pick, c, 1);
            let ok = self.search(colored + 1, meter);
            self.set(pick, c, -1);
            self.used = saved_used;
            if ok? {
                return Ok(true);
            }
            self.color[pick] = NONE;
        }
        Ok(false)
    }
}
