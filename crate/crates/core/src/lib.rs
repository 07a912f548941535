//! Treewidth-like graph parameters decided by graph searching games.
//!
//! A graph is encoded as a game in which searchers try to clear a fugitive
//! from the graph. The winning region of that game (the pit) is computed
//! bottom-up from the positions that are already won, and distance labels on
//! the pit decide treewidth, pathwidth, treedepth, q-branched treewidth and
//! dependency-treewidth.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod ealt;
pub mod graph;
pub mod oracle;
pub mod order;
pub mod parameters;
pub mod pid;
pub mod vertex_set;

pub use ealt::{Acceptance, EdgeAltGraph, NodeId, StrategyDag, Weight, WeightScheme};
pub use graph::{Graph, GraphError};
pub use order::{OrderError, PartialOrder};
pub use pid::{discover, discover_with, DiscoverError, DiscoverOptions, GluePolicy, Pit, RevealScan};
pub use vertex_set::{width_for, VertexSet};
pub use parameters::{
    compute, decide, decomposition_from_strategy, validate_decomposition, ParameterKind, Query, Solution,
    TreeDecomposition, ValidationReport,
};
