//! Conjecture scans, random-graph experiments and regression checks built on
//! the `rainbow_forge` library.

pub mod cli;
pub mod enumerate;
pub mod experiment;
pub mod floors;
pub mod regression;
pub mod scan;
