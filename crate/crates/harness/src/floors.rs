//! Frozen regression floors for the random-graph experiments.
//!
//! Measured 2026-10-19 with `experiment_random(.., n = 2000, trials = 20, ..)`
//! on the seeds below, timing disabled, release build:
//!
//! | regime              | seed  | min ratio | median ratio | min size | median size |
//! |---------------------|-------|-----------|--------------|----------|-------------|
//! | sparse, p = n^-0.7  | 20260 | 0.889     | 1.000        | 8        | 8           |
//! | dense, p = 0.1      | 20261 | 0.717     | 0.750        | 38       | 39          |
//!
//! The floors sit slightly below the measured minima so that a change in
//! floating-point rounding of `p` cannot flip the check; any algorithmic
//! regression moves the numbers by far more.

pub const N: usize = 2000;
pub const TRIALS: usize = 20;

pub const SPARSE_EXPONENT: f64 = 0.7;
pub const SPARSE_SEED: u64 = 20260;
/// Minimum of `|X| / chi_estimate` over the sparse trials.
pub const SPARSE_MIN_RATIO: f64 = 0.85;

pub const DENSE_P: f64 = 0.1;
pub const DENSE_SEED: u64 = 20261;
/// Minimum `|X|` over the dense trials; the nominal target is `1/(3p)`.
pub const DENSE_MIN_SIZE: usize = 36;
