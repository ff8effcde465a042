//! Searches for counterexamples to rainbow-path, rainbow-set, induced-path
//! and induced-cycle bounds over small triangle-free graphs.
//!
//! The asymptotic statements have unknown constants, so each scan tests a
//! constant-free proxy and labels it as such in [`Conjecture::proxy`].

use std::fmt;
use std::str::FromStr;

use rainbow_forge::certificate::{InducedCycleCert, InducedPathCert, RainbowSetCert, Violation};
use rainbow_forge::generators::{c4_free_process, gnp, kr_free_process, GenError, Seed};
use rainbow_forge::io::{parse_graph6, to_graph6};
use rainbow_forge::oracles::{
    chromatic_number, colorings_with_exactly, enumerate_optimal_colorings, longest_induced_cycle,
    longest_induced_path, max_rainbow_independent_set, max_rainbow_induced_path, SearchBudget,
    SearchError,
};
use rainbow_forge::{Graph, ProperColoring};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumerate::for_each_triangle_free;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjecture {
    /// Every proper colouring has a rainbow induced path on `chi` vertices.
    Aravind,
    /// Every proper colouring has a rainbow independent set of size `ceil(chi/2)`.
    RainbowIs,
    /// There is an induced path on `chi` vertices.
    InducedPath,
    /// There is an induced cycle of length at least `chi` (when `chi >= 3`).
    InducedCycle,
}

impl Conjecture {
    pub const ALL: [Conjecture; 4] = [
        Conjecture::Aravind,
        Conjecture::RainbowIs,
        Conjecture::InducedPath,
        Conjecture::InducedCycle,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Conjecture::Aravind => "aravind",
            Conjecture::RainbowIs => "rainbow_is",
            Conjecture::InducedPath => "induced_path",
            Conjecture::InducedCycle => "induced_cycle",
        }
    }

    pub fn proxy(self) -> &'static str {
        match self {
            Conjecture::Aravind => {
                "proxy: min over colourings of the max rainbow induced path order, required >= chi (length >= chi - 1)"
            }
            Conjecture::RainbowIs => "exact bound: min over colourings of the max rainbow independent set, required >= ceil(chi/2)",
            Conjecture::InducedPath => "proxy: longest induced path order, required >= chi",
            Conjecture::InducedCycle => "proxy: longest induced cycle length, required >= chi when chi >= 3",
        }
    }

    fn colored(self) -> bool {
        matches!(self, Conjecture::Aravind | Conjecture::RainbowIs)
    }

    fn required(self, chi: usize) -> usize {
        match self {
            Conjecture::RainbowIs => chi.div_ceil(2),
            Conjecture::InducedCycle if chi <= 2 => 0,
            _ => chi,
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Conjecture {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, ScanError> {
        Conjecture::ALL
            .into_iter()
            .find(|c| c.id() == s.trim())
            .ok_or_else(|| ScanError::UnknownConjecture(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Path(InducedPathCert),
    Cycle(InducedCycleCert),
    RainbowSet(RainbowSetCert),
}

impl Witness {
    fn size(&self) -> usize {
        match self {
            Witness::Path(p) => p.order(),
            Witness::Cycle(c) => c.length(),
            Witness::RainbowSet(s) => s.size(),
        }
    }
}

/// One graph checked against one conjecture. For coloured conjectures the
/// colouring is the one attaining the minimum, so a violated record is a
/// self-contained counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub graph: String,
    pub conjecture: Conjecture,
    pub chi: Option<usize>,
    pub coloring: Option<Vec<u32>>,
    pub measured: Option<usize>,
    pub required: Option<usize>,
    pub verdict: Verdict,
    pub certificate: Option<Witness>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SampleSpec {
    TriangleFreeProcess { n: usize },
    Girth5Process { n: usize },
    Gnp { n: usize, p: f64 },
}

impl SampleSpec {
    pub fn generate(&self, seed: Seed) -> Result<Graph, GenError> {
        match *self {
            SampleSpec::TriangleFreeProcess { n } => kr_free_process(n, 3, seed),
            SampleSpec::Girth5Process { n } => c4_free_process(n, seed, true),
            SampleSpec::Gnp { n, p } => gnp(n, p, seed),
        }
    }
}

impl FromStr for SampleSpec {
    type Err = ScanError;

    /// `triangle_free_process(N)`, `girth5_process(N)` or `gnp(N,P)`.
    fn from_str(s: &str) -> Result<Self, ScanError> {
        let bad = || ScanError::BadSource(s.to_string());
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let args: Vec<&str> = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(bad)?
            .split(',')
            .map(str::trim)
            .collect();
        let n = || args[0].parse::<usize>().map_err(|_| bad());
        match (&s[..open], args.len()) {
            ("triangle_free_process", 1) => Ok(SampleSpec::TriangleFreeProcess { n: n()? }),
            ("girth5_process", 1) => Ok(SampleSpec::Girth5Process { n: n()? }),
            ("gnp", 2) => Ok(SampleSpec::Gnp {
                n: n()?,
                p: args[1].parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Source {
    /// Every labelled triangle-free graph on `1..=n_max` vertices.
    Exhaustive { n_max: usize },
    /// `trials` graphs from the generator; graphs with a triangle are skipped.
    Sampled {
        spec: SampleSpec,
        trials: usize,
        seed: Seed,
    },
}

#[derive(Debug, Clone, Default)]
pub struct ScanOptions {
    pub budget: SearchBudget,
    /// Also minimise over colourings with `chi + 1` colours.
    pub extra_colors: bool,
    /// Permit exhaustive scans on 8 vertices.
    pub allow_eight: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error(
        "unknown conjecture {0:?} (expected aravind, rainbow_is, induced_path or induced_cycle)"
    )]
    UnknownConjecture(String),
    #[error("bad sample source {0:?} (expected triangle_free_process(N), girth5_process(N) or gnp(N,P))")]
    BadSource(String),
    #[error("exhaustive scans are limited to {limit} vertices, got {n_max}")]
    TooLarge { n_max: usize, limit: usize },
    #[error(transparent)]
    Generator(#[from] GenError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub holds: usize,
    pub violated: usize,
    pub budget_exceeded: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureSummary {
    pub conjecture: Conjecture,
    pub proxy: &'static str,
    pub counts: VerdictCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub graphs: usize,
    pub skipped_with_triangle: usize,
    pub conjectures: Vec<ConjectureSummary>,
}

impl ScanSummary {
    pub fn counts(&self, c: Conjecture) -> VerdictCounts {
        self.conjectures
            .iter()
            .find(|s| s.conjecture == c)
            .map(|s| s.counts)
            .unwrap_or_default()
    }

    pub fn any(&self, v: Verdict) -> bool {
        self.conjectures.iter().any(|s| match v {
            Verdict::Holds => s.counts.holds > 0,
            Verdict::Violated => s.counts.violated > 0,
            Verdict::BudgetExceeded => s.counts.budget_exceeded > 0,
        })
    }
}

const CHUNK: usize = 2048;

/// Scans every graph of `source` against each conjecture in `ids`. Results
/// reach `sink` in source order (graph index, then the order of `ids`)
/// regardless of how the work is scheduled.
pub fn scan_conjecture(
    ids: &[Conjecture],
    source: &Source,
    opts: &ScanOptions,
    mut sink: impl FnMut(ScanResult),
) -> Result<ScanSummary, ScanError> {
    let mut summary = ScanSummary {
        graphs: 0,
        skipped_with_triangle: 0,
        conjectures: ids
            .iter()
            .map(|&c| ConjectureSummary {
                conjecture: c,
                proxy: c.proxy(),
                counts: VerdictCounts::default(),
            })
            .collect(),
    };
    let mut flush = |batch: &mut Vec<Graph>, summary: &mut ScanSummary| {
        let results: Vec<Vec<ScanResult>> =
            batch.par_iter().map(|g| scan_graph(g, ids, opts)).collect();
        for r in results.into_iter().flatten() {
            let s = summary
                .conjectures
                .iter_mut()
                .find(|s| s.conjecture == r.conjecture)
                .unwrap();
            match r.verdict {
                Verdict::Holds => s.counts.holds += 1,
                Verdict::Violated => s.counts.violated += 1,
                Verdict::BudgetExceeded => s.counts.budget_exceeded += 1,
            }
            sink(r);
        }
        summary.graphs += batch.len();
        batch.clear();
    };
    let mut batch = Vec::with_capacity(CHUNK);
    match *source {
        Source::Exhaustive { n_max } => {
            let limit = if opts.allow_eight { 8 } else { 7 };
            if n_max > limit {
                return Err(ScanError::TooLarge { n_max, limit });
            }
            for n in 1..=n_max {
                for_each_triangle_free(n, |edges| {
                    batch.push(
                        Graph::new(n, edges.iter().copied()).expect("enumerated edges are simple"),
                    );
                    if batch.len() == CHUNK {
                        flush(&mut batch, &mut summary);
                    }
                });
            }
        }
        Source::Sampled { spec, trials, seed } => {
            for i in 0..trials {
                let g = spec.generate(seed.derive(i as u64))?;
                if g.is_kr_free(3) {
                    batch.push(g);
                } else {
                    summary.skipped_with_triangle += 1;
                }
                if batch.len() == CHUNK {
                    flush(&mut batch, &mut summary);
                }
            }
        }
    }
    flush(&mut batch, &mut summary);
    Ok(summary)
}

/// Checks one graph against each conjecture.
pub fn scan_graph(g: &Graph, ids: &[Conjecture], opts: &ScanOptions) -> Vec<ScanResult> {
    let graph6 = to_graph6(g);
    let blank = |c: Conjecture| ScanResult {
        graph: graph6.clone(),
        conjecture: c,
        chi: None,
        coloring: None,
        measured: None,
        required: None,
        verdict: Verdict::BudgetExceeded,
        certificate: None,
        note: None,
    };
    let chi = match chromatic_number(g, &opts.budget) {
        Ok(x) => x.value,
        Err(e) => {
            return ids
                .iter()
                .map(|&c| ScanResult {
                    note: Some(e.to_string()),
                    ..blank(c)
                })
                .collect();
        }
    };
    ids.iter()
        .map(|&c| {
            let required = c.required(chi);
            let base = ScanResult {
                chi: Some(chi),
                required: Some(required),
                ..blank(c)
            };
            let outcome = if c.colored() {
                min_over_colorings(g, c, chi, opts)
            } else {
                uncolored(g, c, &opts.budget).map(|w| (None, w))
            };
            match outcome {
                Ok((coloring, witness)) => {
                    let measured = witness.as_ref().map_or(0, Witness::size);
                    ScanResult {
                        coloring,
                        measured: Some(measured),
                        verdict: if measured >= required {
                            Verdict::Holds
                        } else {
                            Verdict::Violated
                        },
                        certificate: witness,
                        note: (c == Conjecture::InducedCycle && chi <= 2)
                            .then(|| "vacuous: chi <= 2".to_string()),
                        ..base
                    }
                }
                Err(e) => ScanResult {
                    note: Some(e.to_string()),
                    ..base
                },
            }
        })
        .collect()
}

fn uncolored(
    g: &Graph,
    c: Conjecture,
    budget: &SearchBudget,
) -> Result<Option<Witness>, SearchError> {
    Ok(match c {
        Conjecture::InducedPath => Some(Witness::Path(longest_induced_path(g, budget)?)),
        Conjecture::InducedCycle => longest_induced_cycle(g, budget)?.map(Witness::Cycle),
        _ => unreachable!("coloured conjecture"),
    })
}

fn colored_witness(
    g: &Graph,
    c: Conjecture,
    col: &ProperColoring,
    budget: &SearchBudget,
) -> Result<Witness, SearchError> {
    Ok(match c {
        Conjecture::Aravind => Witness::Path(max_rainbow_induced_path(g, col, budget)?),
        Conjecture::RainbowIs => Witness::RainbowSet(max_rainbow_independent_set(g, col, budget)?),
        _ => unreachable!("uncoloured conjecture"),
    })
}

type Minimum = (Option<Vec<u32>>, Option<Witness>);

fn min_over_colorings(
    g: &Graph,
    c: Conjecture,
    chi: usize,
    opts: &ScanOptions,
) -> Result<Minimum, SearchError> {
    let mut best: Option<(Vec<u32>, Witness)> = None;
    let mut consider = |col: ProperColoring| -> Result<(), SearchError> {
        let w = colored_witness(g, c, &col, &opts.budget)?;
        if best.as_ref().is_none_or(|(_, b)| w.size() < b.size()) {
            best = Some((col.colors().to_vec(), w));
        }
        Ok(())
    };
    for col in enumerate_optimal_colorings(g, &opts.budget)? {
        consider(col?)?;
    }
    if opts.extra_colors && chi < g.n() {
        for col in colorings_with_exactly(g, chi + 1, &opts.budget)? {
            consider(col?)?;
        }
    }
    Ok(match best {
        Some((col, w)) => (Some(col), Some(w)),
        None => (None, None),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("graph6 does not parse: {0}")]
    Graph(String),
    #[error("graph has a triangle")]
    NotTriangleFree,
    #[error("colouring is missing or not proper: {0}")]
    Coloring(String),
    #[error("certificate missing or of the wrong kind")]
    MissingCertificate,
    #[error("certificate invalid: {0}")]
    Certificate(Violation),
    #[error("the certificate is not rainbow")]
    NotRainbow,
    #[error("recorded chromatic number {recorded:?}, recomputed {actual}")]
    Chi {
        recorded: Option<usize>,
        actual: usize,
    },
    #[error("recomputed maximum {actual} differs from the recorded {recorded:?}")]
    Maximum {
        recorded: Option<usize>,
        actual: usize,
    },
    #[error("recomputed maximum {measured} meets the requirement {required}")]
    NotAViolation { measured: usize, required: usize },
    #[error(transparent)]
    Budget(#[from] SearchError),
}

/// Re-derives a violated record from its graph6 string, colouring and
/// certificate alone: the certificate is valid, it is optimal, and the
/// optimum falls short of the requirement.
pub fn revalidate(r: &ScanResult, budget: &SearchBudget) -> Result<(), BundleError> {
    let g = parse_graph6(&r.graph).map_err(|e| BundleError::Graph(e.to_string()))?;
    if !g.is_kr_free(3) {
        return Err(BundleError::NotTriangleFree);
    }
    let chi = chromatic_number(&g, budget)?.value;
    if r.chi != Some(chi) {
        return Err(BundleError::Chi {
            recorded: r.chi,
            actual: chi,
        });
    }
    let required = r.conjecture.required(chi);
    let actual = if r.conjecture.colored() {
        let colors = r
            .coloring
            .clone()
            .ok_or_else(|| BundleError::Coloring("missing".into()))?;
        let col =
            ProperColoring::new(&g, colors).map_err(|e| BundleError::Coloring(e.to_string()))?;
        match (&r.certificate, r.conjecture) {
            (Some(Witness::Path(p)), Conjecture::Aravind) => {
                p.validate(&g).map_err(BundleError::Certificate)?;
                if !p.is_rainbow(&col) {
                    return Err(BundleError::NotRainbow);
                }
            }
            (Some(Witness::RainbowSet(s)), Conjecture::RainbowIs) => {
                s.validate(&g, &col).map_err(BundleError::Certificate)?;
            }
            _ => return Err(BundleError::MissingCertificate),
        }
        colored_witness(&g, r.conjecture, &col, budget)?.size()
    } else {
        match (&r.certificate, r.conjecture) {
            (Some(Witness::Path(p)), Conjecture::InducedPath) => {
                p.validate(&g).map_err(BundleError::Certificate)?
            }
            (Some(Witness::Cycle(c)), Conjecture::InducedCycle) => {
                c.validate(&g).map_err(BundleError::Certificate)?
            }
            (None, Conjecture::InducedCycle) => {}
            _ => return Err(BundleError::MissingCertificate),
        }
        uncolored(&g, r.conjecture, budget)?
            .as_ref()
            .map_or(0, Witness::size)
    };
    if r.measured != Some(actual) {
        return Err(BundleError::Maximum {
            recorded: r.measured,
            actual,
        });
    }
    if actual >= required {
        return Err(BundleError::NotAViolation {
            measured: actual,
            required,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rainbow_forge::generators::{named, NamedGraph};

    fn run(g: &Graph, c: Conjecture) -> ScanResult {
        scan_graph(g, &[c], &ScanOptions::default()).remove(0)
    }

    #[test]
    fn c5_examples() {
        let c5 = named(&NamedGraph::Cycle(5)).unwrap();
        let a = run(&c5, Conjecture::Aravind);
        assert_eq!(
            (a.chi, a.required, a.verdict),
            (Some(3), Some(3), Verdict::Holds)
        );
        assert!(a.measured.unwrap() >= 3);
        let r = run(&c5, Conjecture::RainbowIs);
        assert_eq!((r.required, r.verdict), (Some(2), Verdict::Holds));
        assert_eq!(run(&c5, Conjecture::InducedCycle).measured, Some(5));
    }

    #[test]
    fn single_edge_holds_under_order_convention() {
        let k2 = named(&NamedGraph::Path(2)).unwrap();
        let p = run(&k2, Conjecture::InducedPath);
        assert_eq!(
            (p.measured, p.required, p.verdict),
            (Some(2), Some(2), Verdict::Holds)
        );
        let c = run(&k2, Conjecture::InducedCycle);
        assert_eq!((c.measured, c.verdict), (Some(0), Verdict::Holds));
        assert!(c.note.is_some());
    }

    #[test]
    fn budget_is_a_verdict() {
        let g = named(&NamedGraph::Grotzsch).unwrap();
        let opts = ScanOptions {
            budget: SearchBudget::nodes(1),
            ..ScanOptions::default()
        };
        assert!(scan_graph(&g, &Conjecture::ALL, &opts)
            .iter()
            .all(|r| r.verdict == Verdict::BudgetExceeded && r.note.is_some()));
    }

    #[test]
    fn revalidation_rejects_a_holding_record() {
        let c5 = named(&NamedGraph::Cycle(5)).unwrap();
        let r = run(&c5, Conjecture::Aravind);
        assert!(matches!(
            revalidate(&r, &SearchBudget::default()),
            Err(BundleError::NotAViolation { .. })
        ));
        let mut forged = r.clone();
        forged.measured = Some(2);
        assert!(matches!(
            revalidate(&forged, &SearchBudget::default()),
            Err(BundleError::Maximum { .. })
        ));
    }

    #[test]
    fn exhaustive_small_and_ordered() {
        let mut seen = Vec::new();
        let s = scan_conjecture(
            &[Conjecture::RainbowIs],
            &Source::Exhaustive { n_max: 4 },
            &ScanOptions::default(),
            |r| seen.push(r.graph),
        )
        .unwrap();
        assert_eq!(s.graphs, 1 + 2 + 7 + 41);
        assert_eq!(s.counts(Conjecture::RainbowIs).holds, 51);
        let expected: Vec<String> = (1..=4)
            .flat_map(crate::enumerate::triangle_free_graphs)
            .map(|g| to_graph6(&g))
            .collect();
        assert_eq!(seen, expected);
    }

    #[test]
    fn sources_parse() {
        assert_eq!(
            "gnp(9, 0.3)".parse::<SampleSpec>().unwrap(),
            SampleSpec::Gnp { n: 9, p: 0.3 }
        );
        assert!("gnp(9)".parse::<SampleSpec>().is_err());
        assert_eq!(
            "rainbow_is".parse::<Conjecture>().unwrap(),
            Conjecture::RainbowIs
        );
        assert!(scan_conjecture(
            &[],
            &Source::Exhaustive { n_max: 8 },
            &ScanOptions::default(),
            |_| {}
        )
        .is_err());
    }
}
