//! Seed connectors, greedy relaxation and exact oracles.
//!
//! A solution is built in two phases: a seed connector that links every
//! query vertex ([`mwc_connector`] or [`ctp_connector`]), then a relaxation
//! that deletes non-query vertices while that lowers inefficiency
//! ([`greedy_relax`], or [`exhaustive_relax`] for small seeds).

mod relax;
mod seed;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

pub use relax::{
    brute_force_mis, exhaustive_relax, greedy_relax, greedy_relax_with, Recompute,
    DEFAULT_BRUTE_FORCE_CAP, DEFAULT_EXHAUSTIVE_CAP,
};
pub use seed::{ctp_connector, mwc_connector};

/// Relative tolerance under which two inefficiency values count as tied.
pub const COST_TOLERANCE: f64 = 1e-9;

/// Compares two costs, treating values within [`COST_TOLERANCE`] as equal.
pub fn cost_cmp(a: f64, b: f64) -> Ordering {
    let scale = a.abs().max(b.abs()).max(1.0);
    if (a - b).abs() <= COST_TOLERANCE * scale {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    /// `None` for the seed connector.
    pub vertex_removed: Option<VertexId>,
    pub inefficiency_after: f64,
    pub solution_size: usize,
}

/// The chain `G_0, G_1, …` visited by greedy relaxation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelaxTrace {
    pub steps: Vec<TraceStep>,
    pub best_step: usize,
}

impl RelaxTrace {
    /// Vertex set of step `j`: the seed minus the first `j` removals.
    pub fn solution_at(&self, seed: &VertexSet, j: usize) -> VertexSet {
        let removed: VertexSet = self.steps[1..=j]
            .iter()
            .filter_map(|s| s.vertex_removed)
            .collect();
        seed.difference(&removed)
    }

    pub fn best_inefficiency(&self) -> f64 {
        self.steps[self.best_step].inefficiency_after
    }
}

/// Greedy relaxation seeded with the Wiener-style connector.
pub fn gra_mis(g: &Graph, query: &VertexSet) -> Result<(VertexSet, RelaxTrace)> {
    let seed = mwc_connector(g, query)?;
    greedy_relax(g, &seed, query)
}

/// Greedy relaxation seeded with cocktail-party peeling.
pub fn gra_ctp(g: &Graph, query: &VertexSet) -> Result<(VertexSet, RelaxTrace)> {
    let seed = ctp_connector(g, query)?;
    greedy_relax(g, &seed, query)
}

pub(crate) fn check_query(g: &Graph, query: &VertexSet) -> Result<()> {
    if query.is_empty() {
        return Err(Error::EmptyQuery);
    }
    query.validate(g.vertex_count())
}

/// Splits `query` by the connected component of `g` holding each vertex.
pub(crate) fn group_by_component(g: &Graph, query: &VertexSet) -> Vec<VertexSet> {
    let labels = g.component_labels();
    let mut groups: Vec<(usize, Vec<VertexId>)> = Vec::new();
    for q in query {
        match groups.iter_mut().find(|(c, _)| *c == labels[q]) {
            Some((_, members)) => members.push(q),
            None => groups.push((labels[q], vec![q])),
        }
    }
    groups.into_iter().map(|(_, m)| VertexSet::new(m)).collect()
}
