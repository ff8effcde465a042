//! Command-line interface. Every verb produces a report body and an exit
//! code: 0 pass, 1 violation found, 2 budget exceeded, 3 usage or input error.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rainbow_forge::extract::{
    extract_discrepancy_witness_with, extract_rainbow_independent_set_with, rainbow_guarantee,
    within_log_bound, ExtractError, ExtractOptions, PickStrategy,
};
use rainbow_forge::generators::{
    c4_free_process, gnp, kr_free_process, named, GenError, NamedGraph, Seed,
};
use rainbow_forge::io::{
    parse_coloring, parse_forest, parse_graph_auto, to_graph6, write_edge_list,
};
use rainbow_forge::oracles::{
    chromatic_number, independence_number, longest_induced_cycle, longest_induced_path,
    SearchBudget, SearchError, DEFAULT_MAX_NODES,
};
use rainbow_forge::structures::{
    cycles_from_pending, embed_rooted_forest, induced_paths_from, long_cycle_bound,
    long_induced_cycle, pending_cycle_count_bound, StructureError,
};
use rainbow_forge::{Graph, ProperColoring};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::experiment::{experiment_random, to_csv, ExperimentSummary, Regime};
use crate::regression::{exit_code, RegressionOptions, CHECKS};
use crate::scan::{
    revalidate, scan_conjecture, Conjecture, SampleSpec, ScanOptions, ScanResult, Source, Verdict,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "rainbow-forge",
    version,
    about = "Certified rainbow, induced-cycle and induced-forest constructions"
)]
pub struct Cli {
    /// Seed for every randomised step.
    #[arg(long, global = true, env = "RAINBOW_FORGE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Node budget for each exact search.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_NODES)]
    pub budget_nodes: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record zero for wall-clock fields so reports are byte-identical.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    MinIndex,
    MaxDegree,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph: a named family such as `petersen`, `cycle(7)`,
    /// `mycielski(3)`, or `gnp(N,P)`, `kr_free_process(N,R)`,
    /// `c4_free_process(N)`, `girth5_process(N)`.
    Gen {
        family: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::EdgeList)]
        graph_format: GraphFormat,
    },
    /// Basic invariants and exact oracle values.
    Invariants { graph: PathBuf },
    /// Rainbow independent set in a K_r-free graph.
    ExtractRainbow {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// A lower bound on the chromatic number; computed exactly when absent.
        #[arg(long)]
        chi: Option<usize>,
        #[arg(long, value_enum, default_value_t = Strategy::MinIndex)]
        strategy: Strategy,
    },
    /// Rainbow set of chi vertices with small chromatic number.
    Discrepancy {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Strategy::MinIndex)]
        strategy: Strategy,
    },
    /// Induced cycles through the pending vertices of a maximal induced path.
    CyclesLemma {
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        start: usize,
    },
    /// Long induced cycle in a graph of large girth.
    CyclesGirth {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Induced paths of a given order starting at a vertex.
    PathsFrom {
        graph: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Embed a rooted forest as an induced subgraph at the given anchors.
    EmbedForest {
        graph: PathBuf,
        #[arg(long)]
        forest: PathBuf,
        #[arg(long, value_delimiter = ',')]
        anchors: Vec<usize>,
    },
    /// Search small triangle-free graphs for counterexamples.
    ScanConjecture(ScanArgs),
    /// Rainbow independent sets in greedily coloured random graphs.
    ExperimentRandom(ExperimentArgs),
    /// Run the bound checks.
    Regression {
        /// Criterion numbers to run (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub conjecture: Vec<String>,
    /// Every labelled triangle-free graph on up to this many vertices.
    #[arg(long, conflicts_with = "sample")]
    pub exhaustive: Option<usize>,
    /// `triangle_free_process(N)`, `girth5_process(N)` or `gnp(N,P)`.
    #[arg(long, requires = "trials")]
    pub sample: Option<String>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Also minimise over colourings with chi + 1 colours.
    #[arg(long)]
    pub extra_colors: bool,
    /// Allow exhaustive scans on 8 vertices.
    #[arg(long)]
    pub allow_eight: bool,
    /// Emit every record, not only violations and budget exhaustions.
    #[arg(long)]
    pub all_records: bool,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Sparse regime with p = n^(-C).
    #[arg(long, conflicts_with = "dense", required_unless_present = "dense")]
    pub sparse: Option<f64>,
    /// Dense regime with constant p.
    #[arg(long)]
    pub dense: Option<f64>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {msg}")]
    Input { path: String, msg: String },
    #[error(transparent)]
    Budget(#[from] SearchError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget(_) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Report text and exit code of a successful run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub body: String,
    pub code: i32,
}

impl Report {
    fn json(v: &impl Serialize, code: i32) -> Report {
        let mut body = serde_json::to_string_pretty(v).expect("reports serialise");
        body.push('\n');
        Report { body, code }
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn read_graph(path: &PathBuf) -> Result<Graph, CliError> {
    parse_graph_auto(&read(path)?).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn read_coloring(path: &PathBuf, g: &Graph) -> Result<ProperColoring, CliError> {
    parse_coloring(&read(path)?, g).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn strategy(s: Strategy, seed: Seed) -> PickStrategy {
    match s {
        Strategy::MinIndex => PickStrategy::MinIndex,
        Strategy::MaxDegree => PickStrategy::MaxDegree,
        Strategy::Random => PickStrategy::SeededRandom(seed),
    }
}

fn json_only(cli: &Cli, verb: &str) -> Result<(), CliError> {
    match cli.format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Usage(format!("{verb} has no CSV output"))),
    }
}

fn structure_error(e: StructureError) -> CliError {
    match e {
        StructureError::Budget(e) => CliError::Budget(e),
        other => CliError::Usage(other.to_string()),
    }
}

/// `NAME(a,b,...)` with numeric arguments.
fn call_syntax(spec: &str) -> Option<(&str, Vec<&str>)> {
    let open = spec.find('(')?;
    let args = spec[open + 1..].strip_suffix(')')?;
    Some((&spec[..open], args.split(',').map(str::trim).collect()))
}

pub fn generate(family: &str, seed: Seed) -> Result<Graph, CliError> {
    let spec = family.trim().to_ascii_lowercase();
    let bad = || CliError::Usage(format!("bad generator arguments in {family:?}"));
    let int = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if let Some((name, args)) = call_syntax(&spec) {
        match (name, args.as_slice()) {
            ("gnp", [n, p]) => return Ok(gnp(int(n)?, p.parse().map_err(|_| bad())?, seed)?),
            ("kr_free_process", [n, r]) => return Ok(kr_free_process(int(n)?, int(r)?, seed)?),
            ("triangle_free_process", [n]) => return Ok(kr_free_process(int(n)?, 3, seed)?),
            ("c4_free_process", [n]) => return Ok(c4_free_process(int(n)?, seed, false)?),
            ("girth5_process", [n]) => return Ok(c4_free_process(int(n)?, seed, true)?),
            _ => {}
        }
    }
    let which: NamedGraph = spec.parse()?;
    Ok(named(&which)?)
}

fn or_budget<T: Serialize>(r: Result<T, SearchError>) -> (Value, bool) {
    match r {
        Ok(v) => (json!(v), false),
        Err(_) => (json!("budget_exceeded"), true),
    }
}

fn invariants(g: &Graph, budget: &SearchBudget) -> Report {
    let (chi, b1) = or_budget(chromatic_number(g, budget).map(|x| x.value));
    let (alpha, b2) = or_budget(independence_number(g, budget).map(|x| x.size));
    let (path, b3) = or_budget(longest_induced_path(g, budget).map(|p| p.order()));
    let (cycle, b4) = or_budget(longest_induced_cycle(g, budget).map(|c| c.map(|c| c.length())));
    let v = json!({
        "n": g.n(),
        "m": g.m(),
        "girth": g.girth(),
        "min_degree": g.min_degree(),
        "max_degree": g.max_degree(),
        "chromatic_number": chi,
        "independence_number": alpha,
        "longest_induced_path_order": path,
        "longest_induced_cycle_length": cycle,
    });
    Report::json(
        &v,
        if b1 || b2 || b3 || b4 {
            EXIT_BUDGET
        } else {
            EXIT_PASS
        },
    )
}

fn scan(cli: &Cli, args: &ScanArgs, budget: SearchBudget) -> Result<Report, CliError> {
    let ids = args
        .conjecture
        .iter()
        .map(|s| s.parse::<Conjecture>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let source = match (&args.exhaustive, &args.sample) {
        (Some(n_max), None) => Source::Exhaustive { n_max: *n_max },
        (None, Some(spec)) => Source::Sampled {
            spec: spec
                .parse::<SampleSpec>()
                .map_err(|e| CliError::Usage(e.to_string()))?,
            trials: args.trials.unwrap_or(0),
            seed: Seed(cli.seed),
        },
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --exhaustive or --sample".into(),
            ))
        }
    };
    let opts = ScanOptions {
        budget: budget.clone(),
        extra_colors: args.extra_colors,
        allow_eight: args.allow_eight,
    };
    let mut records: Vec<ScanResult> = Vec::new();
    let summary = scan_conjecture(&ids, &source, &opts, |r| {
        if args.all_records || r.verdict != Verdict::Holds {
            records.push(r);
        }
    })
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut bundle_failures = Vec::new();
    for r in records.iter().filter(|r| r.verdict == Verdict::Violated) {
        if let Err(e) = revalidate(r, &budget) {
            bundle_failures.push(format!("{} {}: {e}", r.conjecture, r.graph));
        }
    }
    let code = if summary.any(Verdict::Violated) {
        EXIT_VIOLATION
    } else if summary.any(Verdict::BudgetExceeded) {
        EXIT_BUDGET
    } else {
        EXIT_PASS
    };
    match cli.format {
        Format::Json => Ok(Report::json(
            &json!({
                "source": source,
                "summary": summary,
                "bundle_failures": bundle_failures,
                "records": records,
            }),
            code,
        )),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| CliError::Usage(e.to_string());
            w.write_record([
                "graph",
                "conjecture",
                "chi",
                "coloring",
                "measured",
                "required",
                "verdict",
            ])
            .map_err(csv_err)?;
            let opt = |x: Option<usize>| x.map(|x| x.to_string()).unwrap_or_default();
            for r in &records {
                let coloring = r
                    .coloring
                    .as_ref()
                    .map(|c| c.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default();
                let verdict = serde_json::to_value(r.verdict).expect("verdicts serialise");
                w.write_record([
                    r.graph.clone(),
                    r.conjecture.to_string(),
                    opt(r.chi),
                    coloring,
                    opt(r.measured),
                    opt(r.required),
                    verdict.as_str().unwrap_or_default().to_string(),
                ])
                .map_err(csv_err)?;
            }
            let body =
                String::from_utf8(w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?)
                    .expect("csv output is utf-8");
            Ok(Report { body, code })
        }
    }
}

fn experiment(cli: &Cli, args: &ExperimentArgs) -> Result<Report, CliError> {
    let regime = match (args.sparse, args.dense) {
        (Some(c), None) => Regime::Sparse { c },
        (None, Some(p)) => Regime::Dense { p },
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --sparse or --dense".into(),
            ))
        }
    };
    let records = experiment_random(regime, args.n, args.trials, Seed(cli.seed), !cli.no_timing)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let summary = ExperimentSummary::from_records(regime, args.n, &records);
    match cli.format {
        Format::Csv => {
            if let Some(s) = &summary {
                eprintln!(
                    "{regime}: {} trials, min ratio {:.4}, median ratio {:.4}, min |X| {}, median |X| {}",
                    s.trials, s.min_ratio, s.median_ratio, s.min_size, s.median_size
                );
            }
            Ok(Report {
                body: to_csv(&records).map_err(|e| CliError::Usage(e.to_string()))?,
                code: EXIT_PASS,
            })
        }
        Format::Json => Ok(Report::json(
            &json!({ "records": records, "summary": summary }),
            EXIT_PASS,
        )),
    }
}

fn regression(cli: &Cli, only: &[usize], budget: SearchBudget) -> Result<Report, CliError> {
    if let Some(bad) = only.iter().find(|&&i| i == 0 || i > CHECKS.len()) {
        return Err(CliError::Usage(format!(
            "no criterion {bad} (expected 1..={})",
            CHECKS.len()
        )));
    }
    let opts = RegressionOptions {
        budget,
        timing: !cli.no_timing,
        ..RegressionOptions::default()
    };
    let reports: Vec<_> = CHECKS
        .iter()
        .enumerate()
        .filter(|(i, _)| only.is_empty() || only.contains(&(i + 1)))
        .map(|(_, check)| {
            let r = check(&opts);
            eprintln!("{}", r.line());
            r
        })
        .collect();
    let code = exit_code(&reports);
    match cli.format {
        Format::Json => Ok(Report::json(&reports, code)),
        Format::Csv => {
            let mut body = String::from("criterion,outcome,cases,wall_ms\n");
            for r in &reports {
                let outcome = serde_json::to_value(r.outcome).expect("outcomes serialise");
                body.push_str(&format!(
                    "{},{},{},{}\n",
                    r.criterion,
                    outcome.as_str().unwrap_or_default(),
                    r.cases,
                    r.wall_ms
                ));
            }
            Ok(Report { body, code })
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let budget = SearchBudget::nodes(cli.budget_nodes);
    let seed = Seed(cli.seed);
    match &cli.command {
        Command::Gen {
            family,
            graph_format,
        } => {
            json_only(cli, "gen")?;
            let g = generate(family, seed)?;
            let body = match graph_format {
                GraphFormat::EdgeList => write_edge_list(&g),
                GraphFormat::Graph6 => format!("{}\n", to_graph6(&g)),
            };
            Ok(Report {
                body,
                code: EXIT_PASS,
            })
        }
        Command::Invariants { graph } => {
            json_only(cli, "invariants")?;
            Ok(invariants(&read_graph(graph)?, &budget))
        }
        Command::ExtractRainbow {
            graph,
            coloring,
            r,
            chi,
            strategy: s,
        } => {
            json_only(cli, "extract-rainbow")?;
            let g = read_graph(graph)?;
            let c = read_coloring(coloring, &g)?;
            let chi = match chi {
                Some(x) => *x,
                None => chromatic_number(&g, &budget)?.value,
            };
            let opts = ExtractOptions {
                budget: budget.clone(),
                ..ExtractOptions::default()
            };
            let (cert, trace) = match extract_rainbow_independent_set_with(
                &g,
                &c,
                *r,
                chi,
                strategy(*s, seed),
                &opts,
            ) {
                Ok(x) => x,
                Err(ExtractError::BudgetExceeded(e)) => return Err(CliError::Budget(e)),
                Err(e) => return Err(CliError::Usage(e.to_string())),
            };
            let guarantee = rainbow_guarantee(chi, *r);
            let satisfied = cert.validate(&g, &c).is_ok() && cert.size() >= guarantee;
            Ok(Report::json(
                &json!({ "certificate": cert, "trace": trace, "guarantee": guarantee, "satisfied": satisfied }),
                if satisfied { EXIT_PASS } else { EXIT_VIOLATION },
            ))
        }
        Command::Discrepancy {
            graph,
            coloring,
            r,
            strategy: s,
        } => {
            json_only(cli, "discrepancy")?;
            let g = read_graph(graph)?;
            let c = read_coloring(coloring, &g)?;
            let budget = budget.clone().with_max_n(g.n());
            let w = match extract_discrepancy_witness_with(
                &g,
                &c,
                *r,
                strategy(*s, seed),
                None,
                &budget,
            ) {
                Ok(w) => w,
                Err(ExtractError::BudgetExceeded(e)) => return Err(CliError::Budget(e)),
                Err(e) => return Err(CliError::Usage(e.to_string())),
            };
            let bound = w.chi.max(1).ilog2() as usize + 1;
            let satisfied = w.certificate.size() >= w.chi
                && (*r > 3 || within_log_bound(w.certificate.chromatic_bound, w.chi))
                && w.certificate.validate_with(&g, &c, &budget).is_ok();
            Ok(Report::json(
                &json!({
                    "witness": w,
                    "size": w.certificate.size(),
                    "exact_chi_of_witness": w.certificate.chromatic_bound,
                    "bound": bound,
                    "satisfied": satisfied,
                }),
                if satisfied { EXIT_PASS } else { EXIT_VIOLATION },
            ))
        }
        Command::CyclesLemma { graph, t, start } => {
            json_only(cli, "cycles-lemma")?;
            let g = read_graph(graph)?;
            let cycles = cycles_from_pending(&g, *t, *start).map_err(structure_error)?;
            let required = pending_cycle_count_bound(g.min_degree(), *t);
            let lengths: Vec<usize> = cycles.iter().map(|c| c.length()).collect();
            let satisfied = cycles.len() >= required;
            Ok(Report::json(
                &json!({
                    "cycles": cycles,
                    "lengths": lengths,
                    "min_degree": g.min_degree(),
                    "required_count": required,
                    "satisfied": satisfied,
                }),
                if satisfied { EXIT_PASS } else { EXIT_VIOLATION },
            ))
        }
        Command::CyclesGirth { graph, k } => {
            json_only(cli, "cycles-girth")?;
            let g = read_graph(graph)?;
            let cycle = long_induced_cycle(&g, *k).map_err(structure_error)?;
            let bound = long_cycle_bound(g.min_degree(), *k);
            let satisfied = cycle.length() >= bound;
            Ok(Report::json(
                &json!({ "cycle": cycle, "length": cycle.length(), "bound": bound, "satisfied": satisfied }),
                if satisfied { EXIT_PASS } else { EXIT_VIOLATION },
            ))
        }
        Command::PathsFrom {
            graph,
            vertex,
            order,
            count_only,
        } => {
            json_only(cli, "paths-from")?;
            let g = read_graph(graph)?;
            if *vertex >= g.n() {
                return Err(CliError::Usage(format!(
                    "vertex {vertex} outside 0..{}",
                    g.n()
                )));
            }
            let mut count = 0usize;
            let mut paths = Vec::new();
            for p in induced_paths_from(&g, *vertex, *order, &budget) {
                let p = p?;
                count += 1;
                if !count_only {
                    paths.push(p.vertices);
                }
            }
            let v = if *count_only {
                json!({ "count": count })
            } else {
                json!({ "count": count, "paths": paths })
            };
            Ok(Report::json(&v, EXIT_PASS))
        }
        Command::EmbedForest {
            graph,
            forest,
            anchors,
        } => {
            json_only(cli, "embed-forest")?;
            let g = read_graph(graph)?;
            let spec = parse_forest(&read(forest)?).map_err(|e| CliError::Input {
                path: forest.display().to_string(),
                msg: e.to_string(),
            })?;
            match embed_rooted_forest(&g, &spec, anchors) {
                Ok(cert) => Ok(Report::json(
                    &json!({ "certificate": cert, "embedded": true }),
                    EXIT_PASS,
                )),
                Err(e @ StructureError::EmbeddingFailed { .. }) => Ok(Report::json(
                    &json!({ "embedded": false, "error": e.to_string() }),
                    EXIT_VIOLATION,
                )),
                Err(e) => Err(structure_error(e)),
            }
        }
        Command::ScanConjecture(args) => scan(cli, args, budget),
        Command::ExperimentRandom(args) => experiment(cli, args),
        Command::Regression { only } => regression(cli, only, budget),
    }
}
