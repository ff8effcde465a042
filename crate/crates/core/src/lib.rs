//! Certified constructions of rainbow independent sets, rainbow induced
//! subgraphs of small chromatic number, long induced cycles and induced
//! forests, together with exact oracles for small graphs.
//!
//! Every construction returns a certificate from [`certificate`] that can be
//! re-checked against the input graph without trusting the construction.

pub mod bitset;
pub mod certificate;
pub mod coloring;
pub mod extract;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracles;
pub mod structures;

pub use bitset::BitSet;
pub use coloring::ProperColoring;
pub use graph::{Girth, Graph, GraphBuilder, VertexSet};
