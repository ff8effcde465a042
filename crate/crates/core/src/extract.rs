//! Greedy extraction of rainbow independent sets and of rainbow induced
//! subgraphs with small chromatic number.
//!
//! One pass of the extraction repeatedly picks a surviving vertex `v`, keeps
//! it, deletes the surviving vertices of `v`'s colour class (`S`), and then
//! deletes `v`'s surviving neighbourhood (`N`). For `K_r`-free graphs with
//! `r >= 4` a neighbourhood whose chromatic number exceeds
//! `chi^((r-3)/(r-2))` is not deleted; the extraction instead recurses into it
//! with `r - 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::certificate::{DiscrepancyCert, RainbowSetCert};
use crate::coloring::{ColoringError, ProperColoring};
use crate::generators::{Seed, SeededRng};
use crate::graph::{Graph, VertexSet};
use crate::oracles::{self, SearchBudget, SearchError};

/// How the next surviving vertex is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PickStrategy {
    #[default]
    MinIndex,
    /// Largest degree in the surviving graph, ties to the smaller index.
    MaxDegree,
    /// Uniform among survivors, from the seeded stream.
    SeededRandom(Seed),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("coloring is not proper for this graph: {0}")]
    NotProper(#[from] ColoringError),
    #[error("exact chromatic number out of budget: {0}")]
    BudgetExceeded(#[from] SearchError),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Freeness {
    Verified,
    Violated,
    /// Graph too large for the check; the precondition is trusted.
    Unchecked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Iteration {
    pub vertex: usize,
    /// Surviving vertices of `vertex`'s colour class, `vertex` included.
    pub color_class: VertexSet,
    /// Surviving neighbourhood after the class was deleted.
    pub neighborhood: VertexSet,
    /// Exact chromatic number of the neighbourhood (only computed for
    /// `r >= 4`, where it decides whether to recurse).
    pub neighborhood_chi: Option<usize>,
    /// Optimal colouring of the neighbourhood, aligned with its members.
    #[serde(skip)]
    pub neighborhood_coloring: Option<Vec<u32>>,
    /// Survivors after this iteration.
    pub remaining: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Completed {
        set: VertexSet,
    },
    Recursed {
        chi: usize,
        trace: Box<ExtractionTrace>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractionTrace {
    pub r: usize,
    pub chi: usize,
    /// Vertices of the graph at this level, in the ids of the input graph.
    pub level: VertexSet,
    pub iterations: Vec<Iteration>,
    pub branch: Branch,
    pub freeness: Freeness,
}

impl ExtractionTrace {
    /// The set returned by the innermost level.
    pub fn result(&self) -> &VertexSet {
        match &self.branch {
            Branch::Completed { set } => set,
            Branch::Recursed { trace, .. } => trace.result(),
        }
    }

    pub fn depth(&self) -> usize {
        match &self.branch {
            Branch::Completed { .. } => 0,
            Branch::Recursed { trace, .. } => 1 + trace.depth(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExtractOptions {
    pub budget: SearchBudget,
    /// Largest `n` for which `K_r`-freeness is verified before extracting.
    pub freeness_check_limit: usize,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            budget: SearchBudget::default(),
            freeness_check_limit: 2000,
        }
    }
}

/// `ceil(chi^(1/(r-2)) / 2)`: the smallest `m` with `(2m)^(r-2) >= chi`.
pub fn rainbow_guarantee(chi: usize, r: usize) -> usize {
    let e = (r - 2) as u32;
    (0..=chi)
        .find(|&m| {
            (2 * m as u128)
                .checked_pow(e)
                .is_none_or(|p| p >= chi as u128)
        })
        .unwrap_or(chi)
}

/// Whether `x > chi^((r-3)/(r-2))`, i.e. `x^(r-2) > chi^(r-3)`.
pub fn exceeds_threshold(x: usize, chi: usize, r: usize) -> bool {
    let (a, b) = ((r - 2) as u32, (r - 3) as u32);
    match ((x as u128).checked_pow(a), (chi as u128).checked_pow(b)) {
        (Some(lhs), Some(rhs)) => lhs > rhs,
        _ => a as f64 * (x as f64).ln() > b as f64 * (chi as f64).ln(),
    }
}

/// `chi^((r-3)/(r-2))` as a real number.
pub fn threshold(chi: usize, r: usize) -> f64 {
    (chi as f64).powf((r - 3) as f64 / (r - 2) as f64)
}

/// Extracts a rainbow independent set of size at least
/// [`rainbow_guarantee`]`(chi, r)` from a `K_r`-free graph with `chi <= chi(g)`.
pub fn extract_rainbow_independent_set(
    g: &Graph,
    c: &ProperColoring,
    r: usize,
    chi: usize,
    strategy: PickStrategy,
) -> Result<(RainbowSetCert, ExtractionTrace), ExtractError> {
    extract_rainbow_independent_set_with(g, c, r, chi, strategy, &ExtractOptions::default())
}

pub fn extract_rainbow_independent_set_with(
    g: &Graph,
    c: &ProperColoring,
    r: usize,
    chi: usize,
    strategy: PickStrategy,
    opts: &ExtractOptions,
) -> Result<(RainbowSetCert, ExtractionTrace), ExtractError> {
    let c = ProperColoring::new(g, c.colors().to_vec())?;
    if r < 3 {
        return Err(ExtractError::BadParameter(format!(
            "r = {r} must be at least 3"
        )));
    }
    if chi == 0 {
        return Err(ExtractError::BadParameter("chi must be positive".into()));
    }
    let freeness = if g.n() > opts.freeness_check_limit {
        Freeness::Unchecked
    } else if g.is_kr_free(r) {
        Freeness::Verified
    } else {
        Freeness::Violated
    };
    let mut picker = Picker::new(strategy);
    let trace = level(
        g,
        &c,
        r,
        chi,
        BitSet::full(g.n()),
        &mut picker,
        freeness,
        &opts.budget,
    )?;
    let cert = RainbowSetCert::new(trace.result().clone(), &c);
    Ok((cert, trace))
}

struct Picker {
    strategy: PickStrategy,
    rng: Option<SeededRng>,
}

impl Picker {
    fn new(strategy: PickStrategy) -> Self {
        let rng = match strategy {
            PickStrategy::SeededRandom(s) => Some(SeededRng::new(s)),
            _ => None,
        };
        Picker { strategy, rng }
    }

    fn pick(&mut self, g: &Graph, alive: &BitSet) -> Option<usize> {
        match self.strategy {
            PickStrategy::MinIndex => alive.first(),
            PickStrategy::MaxDegree => alive
                .iter()
                .max_by_key(|&v| (g.row(v).intersection_len(alive), std::cmp::Reverse(v))),
            PickStrategy::SeededRandom(_) => {
                let k = alive.len();
                if k == 0 {
                    return None;
                }
                let i = self.rng.as_mut().unwrap().below(k);
                alive.iter().nth(i)
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn level(
    g: &Graph,
    c: &ProperColoring,
    r: usize,
    chi: usize,
    mut alive: BitSet,
    picker: &mut Picker,
    freeness: Freeness,
    budget: &SearchBudget,
) -> Result<ExtractionTrace, ExtractError> {
    let classes = c.classes();
    let level_set = VertexSet::from(&alive);
    let mut iterations = Vec::new();
    let mut x = Vec::new();
    while let Some(v) = picker.pick(g, &alive) {
        x.push(v);
        let class: Vec<usize> = classes[&c.color(v)]
            .iter()
            .copied()
            .filter(|&u| alive.contains(u))
            .collect();
        for &u in &class {
            alive.remove(u);
        }
        let mut nbhd = g.row(v).clone();
        nbhd.intersect_with(&alive);
        let neighborhood = VertexSet::from(&nbhd);
        let (mut neighborhood_chi, mut neighborhood_coloring) = (None, None);
        if r >= 4 && !neighborhood.is_empty() {
            let (h, _) = g.induced_subgraph(&neighborhood);
            let exact = oracles::chromatic_number(
                &h,
                &budget.clone().with_max_n(budget.max_n.unwrap_or(h.n())),
            )?;
            if exceeds_threshold(exact.value, chi, r) {
                let inner = level(g, c, r - 1, exact.value, nbhd, picker, freeness, budget)?;
                iterations.push(Iteration {
                    vertex: v,
                    color_class: VertexSet::new(class),
                    neighborhood,
                    neighborhood_chi: Some(exact.value),
                    neighborhood_coloring: Some(exact.coloring),
                    remaining: alive.len(),
                });
                return Ok(ExtractionTrace {
                    r,
                    chi,
                    level: level_set,
                    iterations,
                    branch: Branch::Recursed {
                        chi: exact.value,
                        trace: Box::new(inner),
                    },
                    freeness,
                });
            }
            neighborhood_chi = Some(exact.value);
            neighborhood_coloring = Some(exact.coloring);
        }
        alive.difference_with(&nbhd);
        iterations.push(Iteration {
            vertex: v,
            color_class: VertexSet::new(class),
            neighborhood,
            neighborhood_chi,
            neighborhood_coloring,
            remaining: alive.len(),
        });
    }
    Ok(ExtractionTrace {
        r,
        chi,
        level: level_set,
        iterations,
        branch: Branch::Completed {
            set: VertexSet::new(x),
        },
        freeness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditFailure {
    #[error("iterations cover {covered} of the {level} vertices at this level")]
    NotCovering { covered: usize, level: usize },
    #[error("{size} iterations with threshold {threshold:.3} cannot account for chi = {chi}")]
    CountTooSmall {
        size: usize,
        threshold: String,
        chi: usize,
    },
    #[error("survivor counts do not strictly decrease")]
    NotDecreasing,
}

/// Checks the counting argument on every completed level: the classes and
/// neighbourhoods cover the level, and `|X| (1 + chi^((r-3)/(r-2))) >= chi`.
pub fn audit_trace(trace: &ExtractionTrace) -> Result<(), AuditFailure> {
    let mut prev = usize::MAX;
    for it in &trace.iterations {
        if it.remaining >= prev {
            return Err(AuditFailure::NotDecreasing);
        }
        prev = it.remaining;
    }
    match &trace.branch {
        Branch::Recursed { trace, .. } => audit_trace(trace),
        Branch::Completed { set } => {
            let mut covered = std::collections::BTreeSet::new();
            for it in &trace.iterations {
                covered.extend(it.color_class.iter());
                covered.extend(it.neighborhood.iter());
            }
            if covered.len() != trace.level.len()
                || !trace.level.iter().all(|v| covered.contains(&v))
            {
                return Err(AuditFailure::NotCovering {
                    covered: covered.len(),
                    level: trace.level.len(),
                });
            }
            let count_ok = if trace.r == 3 {
                2 * set.len() >= trace.chi
            } else {
                let t = threshold(trace.chi, trace.r);
                set.len() as f64 * (1.0 + t) >= trace.chi as f64 * (1.0 - 1e-12)
            };
            if !count_ok {
                return Err(AuditFailure::CountTooSmall {
                    size: set.len(),
                    threshold: format!("{:.3}", threshold(trace.chi, trace.r)),
                    chi: trace.chi,
                });
            }
            Ok(())
        }
    }
}

/// The colouring certified by a completed top-level trace: one colour per
/// class `S_i`, then the neighbourhoods coloured with fresh colours (one
/// colour each for `r = 3`, their optimal colourings otherwise). `None` if
/// the trace recursed. The result is checked to be proper.
pub fn covering_coloring(
    g: &Graph,
    trace: &ExtractionTrace,
) -> Option<Result<ProperColoring, ColoringError>> {
    if !matches!(trace.branch, Branch::Completed { .. }) {
        return None;
    }
    let mut colors = vec![0u32; g.n()];
    let mut next = 0u32;
    for it in &trace.iterations {
        next += 1;
        for v in it.color_class.iter() {
            colors[v] = next;
        }
    }
    for it in &trace.iterations {
        match &it.neighborhood_coloring {
            Some(col) => {
                let base = next;
                for (i, v) in it.neighborhood.iter().enumerate() {
                    colors[v] = base + col[i];
                    next = next.max(base + col[i]);
                }
            }
            None if !it.neighborhood.is_empty() => {
                next += 1;
                for v in it.neighborhood.iter() {
                    colors[v] = next;
                }
            }
            None => {}
        }
    }
    Some(ProperColoring::new(g, colors))
}

/// A rainbow set `Y` with the exact chromatic number of `g[Y]`, and the
/// independent set each round contributed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscrepancyWitness {
    pub certificate: DiscrepancyCert,
    pub rounds: Vec<VertexSet>,
    /// The target size, `chi(g)` or the supplied value.
    pub chi: usize,
}

/// `log2(chi) + 1 >= bound`, decided in integers as `2^(bound-1) <= chi`.
pub fn within_log_bound(bound: usize, chi: usize) -> bool {
    bound == 0
        || 1u128
            .checked_shl(bound as u32 - 1)
            .is_some_and(|p| p <= chi as u128)
}

/// Repeats the extraction pass (deleting every neighbourhood) on the graph
/// that remains after removing all colour classes used so far, until the
/// collected set has `chi(g)` vertices.
pub fn extract_discrepancy_witness(
    g: &Graph,
    c: &ProperColoring,
    r: usize,
    strategy: PickStrategy,
) -> Result<DiscrepancyWitness, ExtractError> {
    extract_discrepancy_witness_with(g, c, r, strategy, None, &SearchBudget::default())
}

/// As [`extract_discrepancy_witness`], with `chi` supplied instead of
/// computed exactly.
pub fn extract_discrepancy_witness_with(
    g: &Graph,
    c: &ProperColoring,
    r: usize,
    strategy: PickStrategy,
    chi: Option<usize>,
    budget: &SearchBudget,
) -> Result<DiscrepancyWitness, ExtractError> {
    let c = ProperColoring::new(g, c.colors().to_vec())?;
    if r < 3 {
        return Err(ExtractError::BadParameter(format!(
            "r = {r} must be at least 3"
        )));
    }
    let chi = match chi {
        Some(x) => x,
        None => oracles::chromatic_number(g, budget)?.value,
    };
    let classes = c.classes();
    let mut picker = Picker::new(strategy);
    let mut outer = BitSet::full(g.n());
    let mut y = Vec::new();
    let mut rounds = Vec::new();
    while y.len() < chi && !outer.is_empty() {
        let mut alive = outer.clone();
        let mut x = Vec::new();
        while let Some(v) = picker.pick(g, &alive) {
            x.push(v);
            for &u in &classes[&c.color(v)] {
                alive.remove(u);
            }
            let nbhd = g.row(v);
            alive.difference_with(nbhd);
        }
        for &v in &x {
            for &u in &classes[&c.color(v)] {
                outer.remove(u);
            }
        }
        y.extend_from_slice(&x);
        rounds.push(VertexSet::new(x));
    }
    let members = VertexSet::new(y);
    let (h, _) = g.induced_subgraph(&members);
    let exact = oracles::chromatic_number(
        &h,
        &budget.clone().with_max_n(budget.max_n.unwrap_or(h.n())),
    )?;
    Ok(DiscrepancyWitness {
        certificate: DiscrepancyCert {
            members,
            chromatic_bound: exact.value,
        },
        rounds,
        chi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{kr_free_process, mycielski_tower, named, NamedGraph};
    use crate::oracles::{enumerate_optimal_colorings, max_rainbow_independent_set};

    fn c5() -> (Graph, ProperColoring) {
        let g = named(&NamedGraph::Cycle(5)).unwrap();
        let c = ProperColoring::new(&g, vec![1, 2, 1, 2, 3]).unwrap();
        (g, c)
    }

    #[test]
    fn guarantee_values() {
        assert_eq!(rainbow_guarantee(3, 3), 2);
        assert_eq!(rainbow_guarantee(4, 3), 2);
        assert_eq!(rainbow_guarantee(5, 3), 3);
        assert_eq!(rainbow_guarantee(1, 3), 1);
        // ceil(sqrt(16)/2) = 2, ceil(sqrt(17)/2) = 3
        assert_eq!(rainbow_guarantee(16, 4), 2);
        assert_eq!(rainbow_guarantee(17, 4), 3);
        assert!(exceeds_threshold(3, 4, 4));
        assert!(!exceeds_threshold(2, 4, 4));
        assert!(!exceeds_threshold(1, 5, 3) && exceeds_threshold(2, 5, 3));
        assert!(within_log_bound(3, 4) && !within_log_bound(4, 4) && within_log_bound(2, 3));
    }

    #[test]
    fn c5_trace_by_hand() {
        let (g, c) = c5();
        let (cert, trace) =
            extract_rainbow_independent_set(&g, &c, 3, 3, PickStrategy::MinIndex).unwrap();
        assert_eq!(cert.members.as_slice(), &[0, 3]);
        assert!(cert.validate(&g, &c).is_ok());
        let it = &trace.iterations[0];
        assert_eq!(
            (
                it.vertex,
                it.color_class.as_slice(),
                it.neighborhood.as_slice()
            ),
            (0, &[0, 2][..], &[1, 4][..])
        );
        assert_eq!(trace.iterations[1].vertex, 3);
        assert_eq!(trace.freeness, Freeness::Verified);
        assert!(audit_trace(&trace).is_ok());
        let cover = covering_coloring(&g, &trace).unwrap().unwrap();
        assert!(cover.palette_size() <= 2 * cert.size());
    }

    #[test]
    fn rainbow_empty_graph() {
        let g = Graph::empty(4);
        let c = ProperColoring::new(&g, vec![1, 2, 3, 4]).unwrap();
        let (cert, trace) =
            extract_rainbow_independent_set(&g, &c, 3, 1, PickStrategy::MinIndex).unwrap();
        assert_eq!(cert.size(), 4);
        assert_eq!(trace.iterations.len(), 4);
        assert!(trace.iterations.iter().all(|it| it.neighborhood.is_empty()));
    }

    #[test]
    fn grotzsch_all_optimal_colorings() {
        let g = named(&NamedGraph::Grotzsch).unwrap();
        let b = SearchBudget::default();
        let mut count = 0;
        for col in enumerate_optimal_colorings(&g, &b).unwrap() {
            let col = col.unwrap();
            for strategy in [
                PickStrategy::MinIndex,
                PickStrategy::MaxDegree,
                PickStrategy::SeededRandom(Seed(7)),
            ] {
                let (cert, trace) =
                    extract_rainbow_independent_set(&g, &col, 3, 4, strategy).unwrap();
                assert!(cert.size() >= 2);
                assert!(cert.validate(&g, &col).is_ok());
                assert!(audit_trace(&trace).is_ok());
                let best = max_rainbow_independent_set(&g, &col, &b).unwrap();
                assert!(cert.size() <= best.size());
            }
            count += 1;
        }
        assert!(count > 0);
    }

    #[test]
    fn recursion_on_k4_free_graph() {
        // the K4-free process graph has triangles in neighbourhoods
        let g = kr_free_process(30, 4, Seed(3)).unwrap();
        let col = ProperColoring::greedy(&g);
        let chi = oracles::chromatic_number(&g, &SearchBudget::default())
            .unwrap()
            .value;
        let (cert, trace) =
            extract_rainbow_independent_set(&g, &col, 4, chi, PickStrategy::MinIndex).unwrap();
        assert!(cert.validate(&g, &col).is_ok());
        assert!(cert.size() >= rainbow_guarantee(chi, 4));
        assert!(audit_trace(&trace).is_ok());
        if let Some(cover) = covering_coloring(&g, &trace) {
            assert!(cover.is_ok());
        }
    }

    #[test]
    fn discrepancy_examples() {
        let (g, c) = c5();
        let w = extract_discrepancy_witness(&g, &c, 3, PickStrategy::MinIndex).unwrap();
        assert!(w.certificate.size() >= 3);
        assert!(w.certificate.chromatic_bound <= 2);
        assert!(w.certificate.validate(&g, &c).is_ok());

        let e = Graph::empty(5);
        let c = ProperColoring::new(&e, vec![1, 2, 3, 4, 5]).unwrap();
        let w = extract_discrepancy_witness_with(
            &e,
            &c,
            3,
            PickStrategy::MinIndex,
            Some(5),
            &SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(w.certificate.size(), 5);
        assert_eq!(w.certificate.chromatic_bound, 1);
    }

    #[test]
    fn discrepancy_on_tower() {
        for h in 0..=3 {
            let g = mycielski_tower(h);
            let c = ProperColoring::greedy(&g);
            let w = extract_discrepancy_witness(&g, &c, 3, PickStrategy::MinIndex).unwrap();
            assert_eq!(w.chi, h + 2);
            assert!(w.certificate.size() >= w.chi);
            assert!(w.certificate.validate(&g, &c).is_ok());
            assert!(within_log_bound(w.certificate.chromatic_bound, w.chi));
            assert!(w.rounds.len() as u32 <= w.chi.ilog2() + 1);
        }
    }

    #[test]
    fn rejects_improper_coloring_and_bad_r() {
        let (g, _) = c5();
        let k4 = named(&NamedGraph::Complete(4)).unwrap();
        let foreign = ProperColoring::greedy(&k4);
        assert!(matches!(
            extract_rainbow_independent_set(&g, &foreign, 3, 3, PickStrategy::MinIndex),
            Err(ExtractError::NotProper(_))
        ));
        let (g, c) = c5();
        assert!(matches!(
            extract_rainbow_independent_set(&g, &c, 2, 3, PickStrategy::MinIndex),
            Err(ExtractError::BadParameter(_))
        ));
    }
}
