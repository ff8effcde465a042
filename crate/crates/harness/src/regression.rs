//! Checks of every proved bound on generated and named instances, with the
//! exact oracles as referees. Each check reports pass, fail, or
//! budget-exceeded; budget exhaustion is never read as a pass or a failure.

use std::collections::BTreeSet;
use std::time::Instant;

use rainbow_forge::certificate::InducedPathCert;
use rainbow_forge::extract::{
    audit_trace, extract_discrepancy_witness_with, extract_rainbow_independent_set,
    within_log_bound, ExtractError, PickStrategy,
};
use rainbow_forge::generators::{
    c4_free_process, gnp, kr_free_process, mycielski_tower, named, shuffled_pairs, NamedGraph,
    Seed, SeededRng,
};
use rainbow_forge::io::to_graph6;
use rainbow_forge::oracles::{
    chromatic_bounds, chromatic_number, enumerate_optimal_colorings, longest_induced_cycle,
    longest_induced_cycle_unpruned, longest_induced_path, longest_induced_path_unpruned,
    max_rainbow_independent_set, SearchBudget, SearchError,
};
use rainbow_forge::structures::{
    cycles_from_pending, embed_rooted_forest, induced_paths_from, long_cycle_bound,
    long_induced_cycle, pending_cycle_count_bound, ForestSpec, StructureError,
};
use rainbow_forge::{Graph, ProperColoring};
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{count_triangle_free_by_subsets, for_each_triangle_free};
use crate::experiment::{experiment_random, to_csv, ExperimentSummary, Regime};
use crate::floors;
use crate::scan::{
    revalidate, scan_conjecture, Conjecture, SampleSpec, ScanOptions, Source, Verdict,
};

/// Seed from which every generated regression instance is derived.
pub const REFERENCE_SEED: Seed = Seed(0x5eed_2026);

/// Node cap for the chromatic bounds of the larger process graphs, which are
/// outside the exact oracle's admission range.
const BOUNDS_NODES: u64 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub criterion: usize,
    pub name: &'static str,
    pub outcome: Outcome,
    pub cases: usize,
    /// Failures first, then budget exhaustions, truncated.
    pub detail: Vec<String>,
    pub notes: Vec<String>,
    pub wall_ms: u64,
}

impl CheckReport {
    pub fn line(&self) -> String {
        let status = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::BudgetExceeded => "BUDGET_EXCEEDED",
        };
        let mut s = format!(
            "criterion {:>2} {status}: {} ({} cases)",
            self.criterion, self.name, self.cases
        );
        if let Some(first) = self.detail.first() {
            s.push_str(&format!(" -- {first}"));
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct RegressionOptions {
    pub budget: SearchBudget,
    pub seed: Seed,
    pub timing: bool,
}

impl Default for RegressionOptions {
    fn default() -> Self {
        RegressionOptions {
            budget: SearchBudget::default(),
            seed: REFERENCE_SEED,
            timing: true,
        }
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
    budget: Vec<String>,
    notes: Vec<String>,
}

const DETAIL_LIMIT: usize = 20;

impl Tally {
    fn case(&mut self) {
        self.cases += 1;
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    fn budget(&mut self, context: &str, e: impl std::fmt::Display) {
        self.budget.push(format!("{context}: {e}"));
    }

    fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
        self.budget.extend(other.budget);
        self.notes.extend(other.notes);
    }

    fn finish(
        self,
        criterion: usize,
        name: &'static str,
        start: Instant,
        opts: &RegressionOptions,
    ) -> CheckReport {
        let outcome = if !self.failures.is_empty() {
            Outcome::Fail
        } else if !self.budget.is_empty() {
            Outcome::BudgetExceeded
        } else {
            Outcome::Pass
        };
        let mut detail = self.failures;
        detail.extend(self.budget);
        detail.truncate(DETAIL_LIMIT);
        CheckReport {
            criterion,
            name,
            outcome,
            cases: self.cases,
            detail,
            notes: self.notes,
            wall_ms: if opts.timing {
                start.elapsed().as_millis() as u64
            } else {
                0
            },
        }
    }
}

fn named_graph(which: NamedGraph) -> Graph {
    named(&which).expect("named families are valid")
}

/// The triangle-free instances of the rainbow-independent-set check: the
/// 5-cycle, the Grötzsch graph, the Mycielski tower up to height 3 and 100
/// triangle-free process graphs on 20 to 200 vertices.
pub fn triangle_free_suite(seed: Seed) -> Vec<(String, Graph)> {
    let mut out = vec![
        ("cycle(5)".to_string(), named_graph(NamedGraph::Cycle(5))),
        ("grotzsch".to_string(), named_graph(NamedGraph::Grotzsch)),
    ];
    for h in 0..=3 {
        out.push((format!("mycielski({h})"), mycielski_tower(h)));
    }
    for i in 0..100u64 {
        let n = 20 * (1 + i as usize % 10);
        let s = seed.derive(i);
        out.push((
            format!("triangle_free_process({n}, seed {s})"),
            kr_free_process(n, 3, s).expect("valid parameters"),
        ));
    }
    out
}

fn rainbow_case(
    g: &Graph,
    label: &str,
    c: &ProperColoring,
    chi_lo: usize,
    chi_hi: usize,
    t: &mut Tally,
) {
    match extract_rainbow_independent_set(g, c, 3, chi_lo, PickStrategy::MinIndex) {
        Ok((cert, trace)) => {
            if let Err(v) = cert.validate(g, c) {
                t.fail(format!("{label}: certificate invalid: {v}"));
            } else if let Err(a) = audit_trace(&trace) {
                t.fail(format!("{label}: trace audit: {a}"));
            } else if cert.size() >= chi_hi.div_ceil(2) {
                t.case();
            } else if cert.size() >= chi_lo.div_ceil(2) {
                t.budget(
                    label,
                    format!(
                        "size {} undecided between chi bounds [{chi_lo}, {chi_hi}]",
                        cert.size()
                    ),
                );
            } else {
                t.fail(format!("{label}: size {} < ceil({chi_lo}/2)", cert.size()));
            }
        }
        Err(e) => t.fail(format!("{label}: extraction failed: {e}")),
    }
}

/// Rainbow independent sets of size `ceil(chi/2)` in triangle-free graphs.
pub fn check_rainbow_independent_sets(opts: &RegressionOptions) -> CheckReport {
    let start = Instant::now();
    let tallies: Vec<Tally> = triangle_free_suite(opts.seed)
        .par_iter()
        .map(|(label, g)| {
            let mut t = Tally::default();
            if !g.is_kr_free(3) {
                t.fail(format!("{label}: not triangle-free"));
                return t;
            }
            if g.n() <= 16 {
                let chi = match chromatic_number(g, &opts.budget) {
                    Ok(x) => x.value,
                    Err(e) => {
                        t.budget(label, e);
                        return t;
                    }
                };
                let colorings = match enumerate_optimal_colorings(g, &opts.budget) {
                    Ok(it) => it,
                    Err(e) => {
                        t.budget(label, e);
                        return t;
                    }
                };
                for c in colorings {
                    let c = match c {
                        Ok(c) => c,
                        Err(e) => {
                            t.budget(label, e);
                            break;
                        }
                    };
                    let case = format!("{label} colouring {:?}", c.colors());
                    rainbow_case(g, &case, &c, chi, chi, &mut t);
                    match max_rainbow_independent_set(g, &c, &opts.budget) {
                        Ok(best) => {
                            let (got, _) = extract_rainbow_independent_set(
                                g,
                                &c,
                                3,
                                chi,
                                PickStrategy::MinIndex,
                            )
                            .expect("extraction succeeded above");
                            t.check(got.size() <= best.size(), || {
                                format!(
                                    "{case}: extracted {} exceeds the optimum {}",
                                    got.size(),
                                    best.size()
                                )
                            });
                        }
                        Err(e) => t.budget(&case, e),
                    }
                }
            } else {
                let cap = SearchBudget::nodes(opts.budget.max_nodes.min(BOUNDS_NODES));
                let b = chromatic_bounds(g, &cap);
                let greedy = ProperColoring::greedy(g);
                rainbow_case(
                    g,
                    &format!("{label} greedy colouring"),
                    &greedy,
                    b.lower,
                    b.upper,
                    &mut t,
                );
                if b.is_exact() {
                    let c = ProperColoring::new(g, b.coloring.clone())
                        .expect("oracle colourings are proper");
                    rainbow_case(
                        g,
                        &format!("{label} optimal colouring"),
                        &c,
                        b.lower,
                        b.upper,
                        &mut t,
                    );
                } else {
                    t.notes
                        .push(format!("{label}: chi in [{}, {}]", b.lower, b.upper));
                }
            }
            t
        })
        .collect();
    let mut t = Tally::default();
    tallies.into_iter().for_each(|x| t.merge(x));
    t.finish(
        1,
        "rainbow independent set of size ceil(chi/2) in triangle-free graphs",
        start,
        opts,
    )
}

/// Rainbow sets of `chi` vertices inducing chromatic number at most
/// `log2(chi) + 1`, on the Mycielski tower.
pub fn check_discrepancy(opts: &RegressionOptions) -> CheckReport {
    let start = Instant::now();
    let mut t = Tally::default();
    for h in 0..=3 {
        let g = mycielski_tower(h);
        let label = format!("mycielski({h})");
        let chi = match chromatic_number(&g, &opts.budget.clone().with_max_n(g.n())) {
            Ok(x) => x,
            Err(e) => {
                t.budget(&label, e);
                continue;
            }
        };
        t.check(chi.value == h + 2, || {
            format!("{label}: chi = {}, expected {}", chi.value, h + 2)
        });
        let mut colorings = vec![ProperColoring::greedy(&g)];
        colorings.push(
            ProperColoring::new(&g, chi.coloring.clone()).expect("oracle colourings are proper"),
        );
        if g.n() <= 16 {
            match enumerate_optimal_colorings(&g, &opts.budget)
                .map(|it| it.collect::<Result<Vec<_>, _>>())
            {
                Ok(Ok(all)) => colorings.extend(all),
                Ok(Err(e)) | Err(e) => t.budget(&label, e),
            }
        }
        for c in &colorings {
            for strategy in [PickStrategy::MinIndex, PickStrategy::MaxDegree] {
                let case = format!("{label} {strategy:?} colouring {:?}", c.colors());
                match extract_discrepancy_witness_with(
                    &g,
                    c,
                    3,
                    strategy,
                    Some(chi.value),
                    &opts.budget,
                ) {
                    Ok(w) => {
                        let cert = &w.certificate;
                        if let Err(v) = cert.validate_with(&g, c, &opts.budget) {
                            if v == rainbow_forge::certificate::Violation::Undecided {
                                t.budget(&case, v);
                            } else {
                                t.fail(format!("{case}: certificate invalid: {v}"));
                            }
                            continue;
                        }
                        t.check(cert.size() >= chi.value, || {
                            format!("{case}: |Y| = {} < chi", cert.size())
                        });
                        t.check(within_log_bound(cert.chromatic_bound, chi.value), || {
                            format!(
                                "{case}: chi(G[Y]) = {} > log2({}) + 1",
                                cert.chromatic_bound, chi.value
                            )
                        });
                        t.check(w.rounds.len() <= chi.value.ilog2() as usize + 1, || {
                            format!("{case}: {} rounds", w.rounds.len())
                        });
                    }
                    Err(ExtractError::BudgetExceeded(e)) => t.budget(&case, e),
                    Err(e) => t.fail(format!("{case}: {e}")),
                }
            }
        }
    }
    t.finish(
        2,
        "rainbow set of chi vertices with chromatic number <= log2(chi) + 1",
        start,
        opts,
    )
}

fn pending_case(g: &Graph, label: &str, start_vertex: usize, t: &mut Tally) -> Option<Vec<usize>> {
    match cycles_from_pending(g, 2, start_vertex) {
        Ok(cycles) => {
            for c in &cycles {
                if let Err(v) = c.validate(g) {
                    t.fail(format!("{label}: cycle {c} invalid: {v}"));
                }
            }
            let lengths: Vec<usize> = cycles.iter().map(|c| c.length()).collect();
            let distinct: BTreeSet<usize> = lengths.iter().copied().collect();
            t.check(distinct.len() == lengths.len(), || {
                format!("{label}: repeated lengths {lengths:?}")
            });
            let bound = pending_cycle_count_bound(g.min_degree(), 2);
            t.check(cycles.len() >= bound, || {
                format!(
                    "{label}: {} cycles < ceil((d-1)/(t-1)) = {bound}",
                    cycles.len()
                )
            });
            Some(lengths)
        }
        Err(e) => {
            t.fail(format!("{label}: {e}"));
            None
        }
    }
}

/// Induced cycles of distinct lengths through a non-extendable path.
pub fn check_pending_cycles(opts: &RegressionOptions) -> CheckReport {
    let start = Instant::now();
    let mut t = Tally::default();
    for (name, g) in [
        ("petersen", NamedGraph::Petersen),
        ("heawood", NamedGraph::Heawood),
    ] {
        let g = named_graph(g);
        for v in g.vertices() {
            let label = format!("{name} start {v}");
            if let Some(lengths) = pending_case(&g, &label, v, &mut t) {
                t.check(
                    lengths.len() >= 2 && lengths.iter().any(|&l| l >= 4),
                    || format!("{label}: lengths {lengths:?}"),
                );
            }
        }
    }
    let tallies: Vec<Tally> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            let n = 30 * (1 + i as usize % 10);
            let s = opts.seed.derive(1000 + i);
            let g = c4_free_process(n, s, true).expect("valid parameters");
            let label = format!("girth5_process({n}, seed {s})");
            t.check(g.girth().at_least(5), || {
                format!("{label}: girth {}", g.girth())
            });
            pending_case(&g, &label, 0, &mut t);
            t
        })
        .collect();
    tallies.into_iter().for_each(|x| t.merge(x));
    t.finish(
        3,
        "pending-vertex cycles: count and distinct lengths",
        start,
        opts,
    )
}

/// Sharp cases of the long induced cycle bound `3 + d(d-1)^k`.
pub fn check_long_cycles(opts: &RegressionOptions) -> CheckReport {
    let start = Instant::now();
    let mut t = Tally::default();
    for (which, k, expected) in [
        (NamedGraph::Cycle(5), 0, 5),
        (NamedGraph::Petersen, 0, 6),
        (NamedGraph::Cycle(21), 1, 21),
    ] {
        let g = named_graph(which.clone());
        let label = format!("{which:?} k = {k}");
        match long_induced_cycle(&g, k) {
            Ok(c) => {
                t.check(c.validate(&g).is_ok(), || {
                    format!("{label}: invalid cycle {c}")
                });
                t.check(c.length() == expected, || {
                    format!("{label}: length {} != {expected}", c.length())
                });
                let bound = long_cycle_bound(g.min_degree(), k);
                t.check(c.length() >= bound, || {
                    format!("{label}: length {} < bound {bound}", c.length())
                });
                match longest_induced_cycle(&g, &opts.budget) {
                    Ok(best) => {
                        let best = best.map_or(0, |b| b.length());
                        t.check(best == expected, || {
                            format!("{label}: oracle optimum {best} != {expected}")
                        });
                    }
                    Err(e) => t.budget(&label, e),
                }
            }
            Err(e) => t.fail(format!("{label}: {e}")),
        }
    }
    t.finish(4, "long induced cycle, sharp cases", start, opts)
}

/// All induced paths on `order` vertices starting at `v`, by listing every
/// sequence of distinct vertices.
fn brute_force_paths(g: &Graph, v: usize, order: usize) -> BTreeSet<Vec<usize>> {
    fn rec(g: &Graph, path: &mut Vec<usize>, order: usize, out: &mut BTreeSet<Vec<usize>>) {
        if path.len() == order {
            if InducedPathCert::new(path.clone()).validate(g).is_ok() {
                out.insert(path.clone());
            }
            return;
        }
        for w in g.vertices() {
            if !path.contains(&w) {
                path.push(w);
                rec(g, path, order, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    rec(g, &mut vec![v], order, &mut out);
    out
}

/// At least `d!` induced paths on `d + 2` vertices from each vertex.
pub fn check_induced_path_count(opts: &RegressionOptions) -> CheckReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let g = named_graph(NamedGraph::Petersen);
    for v in g.vertices() {
        let label = format!("petersen vertex {v}");
        let found: Result<Vec<_>, SearchError> =
            induced_paths_from(&g, v, 5, &opts.budget).collect();
        match found {
            Ok(paths) => {
                let set: BTreeSet<Vec<usize>> = paths.iter().map(|p| p.vertices.clone()).collect();
                t.check(set.len() == paths.len(), || {
                    format!("{label}: duplicate paths")
                });
                t.check(paths.len() >= 6, || {
                    format!("{label}: {} paths < 3! = 6", paths.len())
                });
                let brute = brute_force_paths(&g, v, 5);
                t.check(set == brute, || {
                    format!(
                        "{label}: {} paths streamed, {} by brute force",
                        set.len(),
                        brute.len()
                    )
                });
            }
            Err(e) => t.budget(&label, e),
        }
    }
    t.finish(
        5,
        "induced paths on d+2 vertices from every vertex",
        start,
        opts,
    )
}

fn independent_tuples(g: &Graph, t: usize) -> Vec<Vec<usize>> {
    fn rec(g: &Graph, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for v in g.vertices() {
            if !cur.contains(&v) && cur.iter().all(|&u| !g.adjacent(u, v)) {
                cur.push(v);
                rec(g, t, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(g, t, &mut Vec::new(), &mut out);
    out
}

/// Every rooted forest with at most `d` vertices embeds induced at every
/// independent anchor tuple of a girth-5 graph with minimum degree `d`.
pub fn check_forest_embeddings(opts: &RegressionOptions) -> CheckReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let g = named_graph(NamedGraph::Petersen);
    for n in 1..=3 {
        for spec in ForestSpec::all_rooted(n) {
            for anchors in independent_tuples(&g, spec.components()) {
                let label = format!(
                    "forest {:?} roots {:?} anchors {anchors:?}",
                    spec.edges(),
                    spec.roots()
                );
                match embed_rooted_forest(&g, &spec, &anchors) {
                    Ok(cert) => t.check(cert.validate(&g, &spec, &anchors).is_ok(), || {
                        format!("{label}: invalid")
                    }),
                    Err(StructureError::Budget(e)) => t.budget(&label, e),
                    Err(e) => t.fail(format!("{label}: {e}")),
                }
            }
        }
    }
    t.finish(
        6,
        "rooted forests on <= 3 vertices embed induced in the Petersen graph",
        start,
        opts,
    )
}

fn random_coloring(g: &Graph, rng: &mut SeededRng) -> ProperColoring {
    let k = g.max_degree() + 2;
    let mut colors = vec![0u32; g.n()];
    for v in g.vertices() {
        let free: Vec<u32> = (1..=k as u32)
            .filter(|&c| g.neighbors(v).iter().all(|&u| u >= v || colors[u] != c))
            .collect();
        colors[v] = free[rng.below(free.len())];
    }
    ProperColoring::new(g, colors).expect("constructed properly")
}

fn brute_force_rainbow_alpha(g: &Graph, c: &ProperColoring) -> usize {
    (0u32..1 << g.n())
        .filter_map(|s| {
            let vs: Vec<usize> = (0..g.n()).filter(|&v| s >> v & 1 == 1).collect();
            (g.is_independent(&vs) && c.is_rainbow(&vs)).then_some(vs.len())
        })
        .max()
        .unwrap_or(0)
}

/// Exact oracles agree with brute force and with their unpruned variants.
pub fn check_oracles(opts: &RegressionOptions) -> CheckReport {
    let start = Instant::now();
    let tallies: Vec<Tally> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            let n = 4 + i as usize % 9;
            let p = 0.2 + 0.1 * (i % 5) as f64;
            let s = opts.seed.derive(2000 + i);
            let g = gnp(n, p, s).expect("valid parameters");
            let label = format!("gnp({n}, {p:.1}, seed {s})");
            let c = random_coloring(&g, &mut SeededRng::new(s.derive(1)));
            match max_rainbow_independent_set(&g, &c, &opts.budget) {
                Ok(cert) => {
                    t.check(cert.validate(&g, &c).is_ok(), || {
                        format!("{label}: invalid rainbow set")
                    });
                    let brute = brute_force_rainbow_alpha(&g, &c);
                    t.check(cert.size() == brute, || {
                        format!("{label}: rainbow alpha {} != {brute}", cert.size())
                    });
                }
                Err(e) => t.budget(&label, e),
            }
            if n <= 10 {
                let paths = longest_induced_path(&g, &opts.budget)
                    .and_then(|a| Ok((a, longest_induced_path_unpruned(&g, &opts.budget)?)));
                match paths {
                    Ok((a, b)) => t.check(a.order() == b.order() && a.validate(&g).is_ok(), || {
                        format!("{label}: path orders {} vs {}", a.order(), b.order())
                    }),
                    Err(e) => t.budget(&label, e),
                }
                let cycles = longest_induced_cycle(&g, &opts.budget)
                    .and_then(|a| Ok((a, longest_induced_cycle_unpruned(&g, &opts.budget)?)));
                match cycles {
                    Ok((a, b)) => {
                        let (la, lb) = (
                            a.as_ref().map_or(0, |c| c.length()),
                            b.map_or(0, |c| c.length()),
                        );
                        t.check(la == lb && a.is_none_or(|c| c.validate(&g).is_ok()), || {
                            format!("{label}: cycle lengths {la} vs {lb}")
                        })
                    }
                    Err(e) => t.budget(&label, e),
                }
            }
            t
        })
        .collect();
    let mut t = Tally::default();
    tallies.into_iter().for_each(|x| t.merge(x));
    t.finish(
        7,
        "oracles agree with brute force and unpruned search",
        start,
        opts,
    )
}

/// Frozen floors for the random-graph experiment, and byte-identical CSV.
pub fn check_random_experiment(opts: &RegressionOptions) -> CheckReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let runs = [
        (
            Regime::Sparse {
                c: floors::SPARSE_EXPONENT,
            },
            Seed(floors::SPARSE_SEED),
        ),
        (
            Regime::Dense { p: floors::DENSE_P },
            Seed(floors::DENSE_SEED),
        ),
    ];
    for (regime, seed) in runs {
        let first = experiment_random(regime, floors::N, floors::TRIALS, seed, false);
        let second = experiment_random(regime, floors::N, floors::TRIALS, seed, false);
        let (a, b) = match (first, second) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                t.fail(format!("{regime}: {e}"));
                continue;
            }
        };
        let summary = ExperimentSummary::from_records(regime, floors::N, &a).expect("trials > 0");
        t.notes.push(format!(
            "{regime}: min ratio {:.3}, median ratio {:.3}, min |X| {}, median |X| {}",
            summary.min_ratio, summary.median_ratio, summary.min_size, summary.median_size
        ));
        match regime {
            Regime::Sparse { .. } => t.check(summary.min_ratio >= floors::SPARSE_MIN_RATIO, || {
                format!(
                    "{regime}: min ratio {:.3} < floor {}",
                    summary.min_ratio,
                    floors::SPARSE_MIN_RATIO
                )
            }),
            Regime::Dense { p } => {
                t.check(summary.min_size >= floors::DENSE_MIN_SIZE, || {
                    format!(
                        "{regime}: min |X| {} < floor {}",
                        summary.min_size,
                        floors::DENSE_MIN_SIZE
                    )
                });
                t.check(summary.min_size as f64 >= 1.0 / (3.0 * p), || {
                    format!("{regime}: min |X| {} < 1/(3p)", summary.min_size)
                });
            }
        }
        let same = to_csv(&a).ok().is_some_and(|x| to_csv(&b).ok() == Some(x));
        t.check(same, || {
            format!("{regime}: CSV differs between identical runs")
        });
    }
    t.finish(
        8,
        "random-graph experiment floors and reproducible CSV",
        start,
        opts,
    )
}

/// Exhaustive scan of triangle-free graphs on at most 7 vertices.
pub fn check_conjecture_scan(opts: &RegressionOptions) -> CheckReport {
    let start = Instant::now();
    let mut t = Tally::default();
    for n in 1..=7 {
        let mut count = 0u64;
        for_each_triangle_free(n, |_| count += 1);
        t.check(count == count_triangle_free_by_subsets(n), || {
            format!(
                "n = {n}: enumerator visits {count}, subset count {}",
                count_triangle_free_by_subsets(n)
            )
        });
    }
    let scan_opts = ScanOptions {
        budget: opts.budget.clone(),
        ..ScanOptions::default()
    };
    let mut violations = Vec::new();
    let mut budget_records = 0usize;
    let summary = scan_conjecture(
        &Conjecture::ALL,
        &Source::Exhaustive { n_max: 7 },
        &scan_opts,
        |r| match r.verdict {
            Verdict::Violated => violations.push(r),
            Verdict::BudgetExceeded => budget_records += 1,
            Verdict::Holds => {}
        },
    );
    let summary = match summary {
        Ok(s) => s,
        Err(e) => {
            t.fail(e.to_string());
            return t.finish(
                9,
                "exhaustive conjecture scan on <= 7 vertices",
                start,
                opts,
            );
        }
    };
    t.cases += summary.graphs;
    for c in Conjecture::ALL {
        let k = summary.counts(c);
        t.notes.push(format!(
            "{c}: {} holds, {} violated, {} budget exceeded",
            k.holds, k.violated, k.budget_exceeded
        ));
    }
    let rainbow = summary.counts(Conjecture::RainbowIs);
    t.check(rainbow.violated == 0, || {
        format!("{} violations of the rainbow set bound", rainbow.violated)
    });
    for r in &violations {
        if let Err(e) = revalidate(r, &opts.budget) {
            t.fail(format!(
                "{} {}: bundle does not re-validate: {e}",
                r.conjecture, r.graph
            ));
        }
    }
    if budget_records > 0 {
        t.budget(
            "scan",
            format!("{budget_records} records exceeded the budget"),
        );
    }
    t.finish(
        9,
        "exhaustive conjecture scan on <= 7 vertices",
        start,
        opts,
    )
}

fn twice<T: PartialEq>(t: &mut Tally, what: &str, f: impl Fn() -> T) {
    t.check(f() == f(), || format!("{what}: runs differ"));
}

/// Every seeded operation reproduces byte-identical output.
pub fn check_determinism(opts: &RegressionOptions) -> CheckReport {
    let start = Instant::now();
    let mut t = Tally::default();
    for i in 0..5 {
        let s = opts.seed.derive(3000 + i);
        twice(&mut t, "seed derivation", || s.derive(7));
        twice(&mut t, "shuffled pairs", || shuffled_pairs(40, s));
        twice(&mut t, "gnp", || to_graph6(&gnp(60, 0.1, s).unwrap()));
        twice(&mut t, "triangle-free process", || {
            to_graph6(&kr_free_process(60, 3, s).unwrap())
        });
        twice(&mut t, "K4-free process", || {
            to_graph6(&kr_free_process(40, 4, s).unwrap())
        });
        twice(&mut t, "C4-free process", || {
            to_graph6(&c4_free_process(80, s, false).unwrap())
        });
        twice(&mut t, "girth-5 process", || {
            to_graph6(&c4_free_process(80, s, true).unwrap())
        });
        let g = kr_free_process(80, 3, s).unwrap();
        let c = ProperColoring::greedy(&g);
        twice(&mut t, "seeded extraction", || {
            extract_rainbow_independent_set(
                &g,
                &c,
                3,
                c.palette_size(),
                PickStrategy::SeededRandom(s),
            )
            .map(|x| serde_json::to_string(&x).unwrap())
            .ok()
        });
    }
    let g = named_graph(NamedGraph::Grotzsch);
    let c = ProperColoring::greedy(&g);
    let runs: Vec<_> = (0..2)
        .map(|_| {
            extract_discrepancy_witness_with(
                &g,
                &c,
                3,
                PickStrategy::SeededRandom(opts.seed),
                None,
                &opts.budget,
            )
            .map(|w| serde_json::to_string(&w).unwrap())
        })
        .collect();
    match (&runs[0], &runs[1]) {
        (Ok(a), Ok(b)) => t.check(a == b, || "seeded discrepancy witness: runs differ".into()),
        (Err(ExtractError::BudgetExceeded(e)), _) => t.budget("seeded discrepancy witness", e),
        (Err(e), _) | (_, Err(e)) => t.fail(format!("seeded discrepancy witness: {e}")),
    }
    twice(&mut t, "experiment CSV", || {
        experiment_random(Regime::Sparse { c: 0.8 }, 300, 6, opts.seed, false)
            .map(|r| to_csv(&r).unwrap())
    });
    let source = Source::Sampled {
        spec: SampleSpec::TriangleFreeProcess { n: 10 },
        trials: 20,
        seed: opts.seed,
    };
    let scan_opts = ScanOptions {
        budget: opts.budget.clone(),
        ..ScanOptions::default()
    };
    let scan = || {
        let mut lines = Vec::new();
        scan_conjecture(&Conjecture::ALL, &source, &scan_opts, |r| {
            lines.push(serde_json::to_string(&r).unwrap())
        })
        .map(|s| (serde_json::to_string(&s).unwrap(), lines))
    };
    twice(&mut t, "sampled scan", scan);
    t.finish(10, "seeded operations are reproducible", start, opts)
}

pub type Check = fn(&RegressionOptions) -> CheckReport;

pub const CHECKS: [Check; 10] = [
    check_rainbow_independent_sets,
    check_discrepancy,
    check_pending_cycles,
    check_long_cycles,
    check_induced_path_count,
    check_forest_embeddings,
    check_oracles,
    check_random_experiment,
    check_conjecture_scan,
    check_determinism,
];

pub fn theorem_regression_suite(opts: &RegressionOptions) -> Vec<CheckReport> {
    CHECKS.iter().map(|check| check(opts)).collect()
}

/// 1 if any check failed, else 2 if any ran out of budget, else 0.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(|r| r.outcome == Outcome::Fail) {
        1
    } else if reports.iter().any(|r| r.outcome == Outcome::BudgetExceeded) {
        2
    } else {
        0
    }
}
