use std::ops::Range;

use serde::Serialize;

use super::Cnf3Formula;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

/// Vertex ranges of one clause gadget plus the local assignment each
/// `S` vertex stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseGadget {
    pub a: Range<VertexId>,
    pub b: Range<VertexId>,
    pub s: Range<VertexId>,
    /// `(variable, value)` triples, one per `S` vertex in range order.
    pub assignments: [[(usize, bool); 3]; 7],
}

#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub graph: Graph,
    pub query: VertexSet,
    /// Block size `M` of every `A_i` and `B_i`.
    pub block_size: usize,
    pub b1: f64,
    pub b2: f64,
    pub clauses: Vec<ClauseGadget>,
    pub formula: Cnf3Formula,
}

impl ReductionInstance {
    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// The block size the constants were designed for, `6m² + 1`.
    pub fn default_block_size(m: usize) -> usize {
        6 * m * m + 1
    }

    pub fn uses_default_block_size(&self) -> bool {
        self.block_size == Self::default_block_size(self.clause_count())
    }

    /// Decision threshold on the ordered-pair inefficiency, `2(B1 + B2)`.
    pub fn threshold(&self) -> f64 {
        2.0 * (self.b1 + self.b2)
    }

    pub fn s_vertices(&self) -> VertexSet {
        self.clauses.iter().flat_map(|c| c.s.clone()).collect()
    }
}

fn compatible(x: &[(usize, bool); 3], y: &[(usize, bool); 3]) -> bool {
    x.iter()
        .all(|&(v, b)| y.iter().all(|&(w, c)| v != w || b == c))
}

/// Builds the clause-gadget graph. Layout: every `A_i` block in clause order,
/// then every `B_i`, then the seven `S_i` vertices per clause. Within `S_i`,
/// pattern `p = 1..=7` gives literal `j` the truth value of bit `2 - j` of `p`.
pub fn reduce_3sat(phi: &Cnf3Formula, block_size: Option<usize>) -> Result<ReductionInstance> {
    let m = phi.clause_count();
    if m == 0 {
        return Err(Error::Invalid("formula has no clauses".into()));
    }
    let big_m = block_size.unwrap_or_else(|| ReductionInstance::default_block_size(m));
    if big_m == 0 {
        return Err(Error::Invalid("block size must be at least 1".into()));
    }
    let a_base = 0;
    let b_base = m * big_m;
    let s_base = 2 * m * big_m;
    let n = s_base + 7 * m;

    let clauses: Vec<ClauseGadget> = phi
        .clauses()
        .iter()
        .enumerate()
        .map(|(i, clause)| {
            let assignments = std::array::from_fn(|k| {
                let p = k + 1;
                std::array::from_fn(|j| {
                    let lit = clause[j];
                    let literal_true = p >> (2 - j) & 1 == 1;
                    (lit.variable, literal_true == lit.positive)
                })
            });
            ClauseGadget {
                a: a_base + i * big_m..a_base + (i + 1) * big_m,
                b: b_base + i * big_m..b_base + (i + 1) * big_m,
                s: s_base + 7 * i..s_base + 7 * (i + 1),
                assignments,
            }
        })
        .collect();

    let mut edges = Vec::new();
    for block in [a_base..b_base, b_base..s_base] {
        for u in block.clone() {
            edges.extend((u + 1..block.end).map(|v| (u, v)));
        }
    }
    for c in &clauses {
        for s in c.s.clone() {
            edges.extend(c.a.clone().chain(c.b.clone()).map(|x| (x, s)));
        }
    }
    let patterns: Vec<(VertexId, &[(usize, bool); 3])> = clauses
        .iter()
        .flat_map(|c| c.s.clone().zip(c.assignments.iter()))
        .collect();
    for (i, &(u, x)) in patterns.iter().enumerate() {
        for &(v, y) in &patterns[i + 1..] {
            if compatible(x, y) {
                edges.push((u, v));
            }
        }
    }

    let mf = big_m as f64;
    let mm = m as f64;
    Ok(ReductionInstance {
        graph: Graph::from_edges(&edges, n)?,
        query: VertexSet::new((0..s_base).collect()),
        block_size: big_m,
        b1: mf * mf * mm * (mm - 0.5),
        b2: mf * mm * (mm - 1.0) / 2.0,
        clauses,
        formula: phi.clone(),
    })
}

/// `Q` plus the `S` vertex matching `f` in every clause.
pub fn solution_from_assignment(inst: &ReductionInstance, f: &[bool]) -> Result<VertexSet> {
    let formula = &inst.formula;
    if f.len() != formula.variable_count() {
        return Err(Error::Invalid(format!(
            "assignment has {} values, formula has {} variables",
            f.len(),
            formula.variable_count()
        )));
    }
    if let Some(i) = formula.first_unsatisfied(f) {
        return Err(Error::UnsatisfiedClause(i));
    }
    let choices: Vec<usize> = formula
        .clauses()
        .iter()
        .map(|c| {
            let p = c.iter().fold(0, |acc, l| acc << 1 | usize::from(l.eval(f)));
            p - 1
        })
        .collect();
    solution_from_choices(inst, &choices)
}

/// `Q` plus `S` vertex `choices[i]` (0..7) of clause `i`; the chosen local
/// assignments must agree on every shared variable.
pub fn solution_from_choices(inst: &ReductionInstance, choices: &[usize]) -> Result<VertexSet> {
    if choices.len() != inst.clause_count() {
        return Err(Error::Invalid(format!(
            "{} choices for {} clauses",
            choices.len(),
            inst.clause_count()
        )));
    }
    if let Some(&bad) = choices.iter().find(|&&c| c >= 7) {
        return Err(Error::Invalid(format!("choice {bad} is not in 0..7")));
    }
    for i in 0..choices.len() {
        for j in i + 1..choices.len() {
            let x = &inst.clauses[i].assignments[choices[i]];
            let y = &inst.clauses[j].assignments[choices[j]];
            if !compatible(x, y) {
                return Err(Error::Invalid(format!(
                    "choices for clauses {i} and {j} disagree on a shared variable"
                )));
            }
        }
    }
    let picked = choices
        .iter()
        .zip(&inst.clauses)
        .map(|(&c, gadget)| gadget.s.start + c);
    Ok(inst.query.union(&picked.collect()))
}
