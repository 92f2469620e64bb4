//! Exact simplex stratification of partition graphs.
//!
//! The partition graph `G_n` has the partitions of `n` as vertices, with an
//! edge whenever one unit can be moved between two parts (a part may be
//! created or emptied). The local simplex dimension `dim_loc(λ)` is the size
//! of the largest clique through `λ` minus one. This crate computes it in two
//! independent ways: by an exact clique search on the neighborhood of `λ`,
//! and by the closed form `max(1, s(λ), t(λ))` in the star and top corner
//! capacities. From the resulting layers it derives thresholds, phase
//! boundaries, interface graphs and region traces.

pub mod cache;
pub mod capacity;
pub mod clique;
pub mod error;
pub mod export;
pub mod graph;
pub mod partition;
pub mod reference;
pub mod strata;
pub mod traces;
pub mod verify;

pub use capacity::{capacity_profile, dim_loc_capacity, CapacityProfile};
pub use clique::{dim_loc_clique, InducedSubgraph};
pub use error::{Error, Result};
pub use graph::{neighbors_by_corners, neighbors_by_multiset, PartitionGraph, VertexId};
pub use partition::{enumerate_partitions, staircase, Cell, CornerSets, Partition};
pub use strata::{
    boundaries, interface_graph, scan_thresholds, stratify, stratify_graph, BoundarySets,
    InterfaceGraph, Mode, Stratification, ThresholdKind, ThresholdTable,
};
pub use verify::{verify, VerificationReport};
