//! Rainbow independent sets in greedily coloured binomial random graphs.

use std::fmt;
use std::time::Instant;

use rainbow_forge::extract::{
    extract_rainbow_independent_set_with, ExtractError, ExtractOptions, PickStrategy,
};
use rainbow_forge::generators::{gnp, GenError, Seed};
use rainbow_forge::ProperColoring;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_N: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum Regime {
    /// `p = n^(-c)` with `1/2 < c <= 1`.
    Sparse { c: f64 },
    /// Constant `p`.
    Dense { p: f64 },
}

impl Regime {
    pub fn edge_probability(&self, n: usize) -> f64 {
        match *self {
            Regime::Sparse { c } => (n as f64).powf(-c),
            Regime::Dense { p } => p,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Sparse { c } => write!(f, "sparse(p = n^-{c})"),
            Regime::Dense { p } => write!(f, "dense(p = {p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("sparse exponent {0} outside (0.5, 1]")]
    Exponent(f64),
    #[error("n = {0} exceeds {MAX_N}")]
    TooLarge(usize),
    #[error(transparent)]
    Generator(#[from] GenError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error("csv: {0}")]
    Csv(String),
}

/// One trial. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub seed: u64,
    pub n: usize,
    pub p: f64,
    pub chi_estimate: usize,
    pub extraction_size: usize,
    pub ratio: f64,
    /// Zero when timing is disabled.
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub regime: Regime,
    pub n: usize,
    pub trials: usize,
    pub min_ratio: f64,
    pub median_ratio: f64,
    pub min_size: usize,
    pub median_size: usize,
}

fn median<T: Copy + PartialOrd>(mut xs: Vec<T>) -> T {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[(xs.len() - 1) / 2]
}

impl ExperimentSummary {
    pub fn from_records(regime: Regime, n: usize, records: &[ExperimentRecord]) -> Option<Self> {
        if records.is_empty() {
            return None;
        }
        let ratios: Vec<f64> = records.iter().map(|r| r.ratio).collect();
        let sizes: Vec<usize> = records.iter().map(|r| r.extraction_size).collect();
        Some(ExperimentSummary {
            regime,
            n,
            trials: records.len(),
            min_ratio: ratios.iter().copied().fold(f64::INFINITY, f64::min),
            median_ratio: median(ratios),
            min_size: *sizes.iter().min().unwrap(),
            median_size: median(sizes),
        })
    }
}

/// Trial `i` uses `seed.derive(i)`. The graph is coloured greedily in index
/// order and the extraction runs with `r = 3` and `chi` the palette size.
pub fn run_trial(
    regime: Regime,
    n: usize,
    seed: Seed,
    timing: bool,
) -> Result<ExperimentRecord, ExperimentError> {
    let start = Instant::now();
    let p = regime.edge_probability(n);
    let g = gnp(n, p, seed)?;
    let c = ProperColoring::greedy(&g);
    let chi = c.palette_size().max(1);
    let opts = ExtractOptions {
        freeness_check_limit: 0,
        ..ExtractOptions::default()
    };
    let (cert, _) =
        extract_rainbow_independent_set_with(&g, &c, 3, chi, PickStrategy::MinIndex, &opts)?;
    Ok(ExperimentRecord {
        seed: seed.0,
        n,
        p,
        chi_estimate: chi,
        extraction_size: cert.size(),
        ratio: cert.size() as f64 / chi as f64,
        wall_ms: if timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        },
    })
}

/// Runs the trials in parallel; records come back in trial order.
pub fn experiment_random(
    regime: Regime,
    n: usize,
    trials: usize,
    seed: Seed,
    timing: bool,
) -> Result<Vec<ExperimentRecord>, ExperimentError> {
    if let Regime::Sparse { c } = regime {
        if !(c > 0.5 && c <= 1.0) {
            return Err(ExperimentError::Exponent(c));
        }
    }
    if n > MAX_N {
        return Err(ExperimentError::TooLarge(n));
    }
    (0..trials as u64)
        .into_par_iter()
        .map(|i| run_trial(regime, n, seed.derive(i), timing))
        .collect()
}

pub fn to_csv(records: &[ExperimentRecord]) -> Result<String, ExperimentError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if records.is_empty() {
        w.write_record([
            "seed",
            "n",
            "p",
            "chi_estimate",
            "extraction_size",
            "ratio",
            "wall_ms",
        ])
        .map_err(|e| ExperimentError::Csv(e.to_string()))?;
    }
    for r in records {
        w.serialize(r)
            .map_err(|e| ExperimentError::Csv(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| ExperimentError::Csv(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_gives_ratio_one() {
        let rs = experiment_random(Regime::Dense { p: 0.0 }, 50, 3, Seed(1), false).unwrap();
        assert!(rs
            .iter()
            .all(|r| r.chi_estimate == 1 && r.extraction_size == 1 && r.ratio == 1.0));
    }

    #[test]
    fn csv_header_and_repeatability() {
        let a =
            to_csv(&experiment_random(Regime::Sparse { c: 0.7 }, 200, 4, Seed(9), false).unwrap())
                .unwrap();
        let b =
            to_csv(&experiment_random(Regime::Sparse { c: 0.7 }, 200, 4, Seed(9), false).unwrap())
                .unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("seed,n,p,chi_estimate,extraction_size,ratio,wall_ms\n"));
        assert_eq!(a.lines().count(), 5);
        assert_eq!(
            to_csv(&[]).unwrap(),
            "seed,n,p,chi_estimate,extraction_size,ratio,wall_ms\n"
        );
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(
            experiment_random(Regime::Sparse { c: 0.5 }, 10, 1, Seed(0), false),
            Err(ExperimentError::Exponent(_))
        ));
        assert!(experiment_random(Regime::Dense { p: 0.1 }, MAX_N + 1, 1, Seed(0), false).is_err());
    }

    #[test]
    fn summary_statistics() {
        let rec = |ratio: f64, size| ExperimentRecord {
            seed: 0,
            n: 1,
            p: 0.0,
            chi_estimate: 1,
            extraction_size: size,
            ratio,
            wall_ms: 0,
        };
        let s = ExperimentSummary::from_records(
            Regime::Dense { p: 0.5 },
            1,
            &[rec(0.5, 3), rec(0.25, 1), rec(1.0, 2)],
        )
        .unwrap();
        assert_eq!(
            (s.min_ratio, s.median_ratio, s.min_size, s.median_size),
            (0.25, 0.5, 1, 2)
        );
    }
}
