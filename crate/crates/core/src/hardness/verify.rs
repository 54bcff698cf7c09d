use std::cmp::Ordering;

use serde::Serialize;

use super::{reduce_3sat, solution_from_assignment, Cnf3Formula};
use crate::connectors::{cost_cmp, exhaustive_relax};
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::metrics;

/// Largest clause count accepted by [`verify_reduction`]; the search covers
/// `2^(7m)` subsets.
pub const MAX_VERIFY_CLAUSES: usize = 3;

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub clause_count: usize,
    pub variable_count: usize,
    pub block_size: usize,
    pub b1: f64,
    pub b2: f64,
    pub threshold: f64,
    pub vertex_count: usize,
    pub diameter: Option<usize>,
    pub satisfiable: bool,
    pub satisfying_assignment: Option<Vec<bool>>,
    /// Inefficiency of the subgraph picked out by `satisfying_assignment`.
    pub assignment_inefficiency: Option<f64>,
    pub min_inefficiency: f64,
    pub min_solution: VertexSet,
    pub below_threshold: bool,
    /// `satisfiable == below_threshold`.
    pub verdict: bool,
}

/// First satisfying assignment in binary counting order (variable 0 is the
/// least significant bit), if any.
pub fn satisfying_assignment(phi: &Cnf3Formula) -> Option<Vec<bool>> {
    let vars = phi.variable_count();
    assert!(vars < 32, "brute-force SAT limited to 31 variables");
    (0u32..1 << vars)
        .map(|bits| (0..vars).map(|v| bits >> v & 1 == 1).collect::<Vec<bool>>())
        .find(|f| phi.is_satisfied_by(f))
}

/// Builds the instance, decides `phi` by enumeration, finds the exact
/// minimum-inefficiency superset of the query, and compares it with the
/// threshold.
pub fn verify_reduction(phi: &Cnf3Formula, block_size: Option<usize>) -> Result<VerificationReport> {
    let m = phi.clause_count();
    if m > MAX_VERIFY_CLAUSES {
        return Err(Error::CapExceeded {
            size: 7 * m,
            cap: 7 * MAX_VERIFY_CLAUSES,
        });
    }
    let inst = reduce_3sat(phi, block_size)?;
    let g = &inst.graph;

    let assignment = satisfying_assignment(phi);
    let assignment_inefficiency = match &assignment {
        Some(f) => {
            let t = solution_from_assignment(&inst, f)?;
            Some(metrics::inefficiency(&g.induced_subgraph(&t).graph))
        }
        None => None,
    };

    let all = VertexSet::full(g.vertex_count());
    let best = exhaustive_relax(g, &all, &inst.query, 7 * m)?;
    let min_inefficiency = metrics::inefficiency(&g.induced_subgraph(&best).graph);
    let threshold = inst.threshold();
    let below_threshold = cost_cmp(min_inefficiency, threshold) != Ordering::Greater;
    let satisfiable = assignment.is_some();

    Ok(VerificationReport {
        clause_count: m,
        variable_count: phi.variable_count(),
        block_size: inst.block_size,
        b1: inst.b1,
        b2: inst.b2,
        threshold,
        vertex_count: g.vertex_count(),
        diameter: metrics::distance_profile(g).diameter(),
        satisfiable,
        satisfying_assignment: assignment,
        assignment_inefficiency,
        min_inefficiency,
        min_solution: best,
        below_threshold,
        verdict: satisfiable == below_threshold,
    })
}
