//! Constructions of induced cycles, paths and forests in graphs with large
//! minimum degree and no short cycles. Each returns a certificate that has
//! already been validated against the input graph.

mod forest;
mod partition;
mod paths;
mod pending;

use thiserror::Error;

use crate::certificate::Violation;
use crate::oracles::SearchError;

pub use forest::{embed_rooted_forest, ForestError, ForestSpec};
pub use partition::{
    lift_cycle, long_cycle_bound, long_induced_cycle, separated_set, tree_partition,
    PartitionDefect, TreePartitionMinor,
};
pub use paths::{induced_paths_from, InducedPaths};
pub use pending::{
    cycles_from_pending, is_non_extendable, maximal_induced_path, pending_cycle_count_bound,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("partition audit failed: {0}")]
    GirthViolation(PartitionDefect),
    #[error("lifted cycle {cycle:?} is not induced: {violation}")]
    LiftFailed {
        cycle: Vec<usize>,
        violation: Violation,
    },
    #[error(
        "no room to embed the {needed} children of forest vertex {forest_vertex} \
         at {host_vertex} ({available} admissible neighbours)"
    )]
    EmbeddingFailed {
        forest_vertex: usize,
        host_vertex: usize,
        needed: usize,
        available: usize,
        partial: Vec<Option<usize>>,
    },
    #[error("constructed certificate failed validation: {0}")]
    Invalid(Violation),
    #[error(transparent)]
    Budget(#[from] SearchError),
}
