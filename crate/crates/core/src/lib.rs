//! Selective connectors for query vertex sets.
//!
//! Given an undirected graph and a query set `Q`, the library looks for an
//! induced subgraph containing `Q` that minimizes network inefficiency: the
//! sum over ordered vertex pairs of `1 - 1/d(u, v)`, with unreachable pairs
//! costing 1. Solutions need not be connected, so far-apart query vertices
//! can stay isolated and separate communities stay separate.

pub mod bench;
pub mod connectors;
pub mod error;
pub mod graph;
pub mod hardness;
pub mod io;
pub mod metrics;
pub mod querygen;
pub mod report;
pub mod subset;

pub use error::{Error, Result};
pub use graph::{Distance, Graph, InducedSubgraph, VertexId, VertexSet};
