use std::cmp::Ordering;

use rayon::prelude::*;

use super::{check_query, cost_cmp, RelaxTrace, TraceStep};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::metrics::DistanceProfile;
use crate::subset::{Mask, SubsetEvaluator};

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 22;

/// Subsets are enumerated as bitmasks over the free vertices.
const MAX_ENUMERABLE: usize = 40;
const SUBSETS_PER_TASK: u64 = 1 << 12;

/// How greedy relaxation re-evaluates a candidate removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Recompute {
    /// Re-run BFS only inside the component that loses the vertex.
    #[default]
    Localized,
    /// Re-run BFS over the whole remaining subgraph.
    Full,
}

fn check_seed(g: &Graph, seed: &VertexSet, query: &VertexSet) -> Result<()> {
    seed.validate(g.vertex_count())?;
    match query.first_missing_from(seed) {
        Some(q) => Err(Error::QueryNotInSeed(q)),
        None => Ok(()),
    }
}

pub fn greedy_relax(g: &Graph, seed: &VertexSet, query: &VertexSet) -> Result<(VertexSet, RelaxTrace)> {
    greedy_relax_with(g, seed, query, Recompute::Localized)
}

/// Deletes, one at a time, the non-query vertex whose removal leaves the
/// lowest inefficiency (smallest id on ties) until only `query` remains, then
/// returns the cheapest set on that chain (fewest vertices on ties).
pub fn greedy_relax_with(
    g: &Graph,
    seed: &VertexSet,
    query: &VertexSet,
    mode: Recompute,
) -> Result<(VertexSet, RelaxTrace)> {
    check_seed(g, seed, query)?;
    let eval = SubsetEvaluator::new(g, seed);
    let is_query: Vec<bool> = seed.iter().map(|v| query.contains(v)).collect();

    let mut mask = eval.full_mask();
    let mut pieces: Vec<(Mask, DistanceProfile)> = eval
        .components(&mask)
        .into_iter()
        .map(|c| {
            let p = eval.profile(&c);
            (c, p)
        })
        .collect();
    let mut total = DistanceProfile::new(0);
    for (_, p) in &pieces {
        total.absorb(p);
    }

    let mut steps = vec![TraceStep {
        vertex_removed: None,
        inefficiency_after: total.inefficiency(),
        solution_size: seed.len(),
    }];

    loop {
        let free: Vec<usize> = mask.ones().filter(|&l| !is_query[l]).collect();
        if free.is_empty() {
            break;
        }
        let mut piece_of = vec![usize::MAX; eval.len()];
        for (i, (m, _)) in pieces.iter().enumerate() {
            m.ones().for_each(|l| piece_of[l] = i);
        }

        let outcomes: Vec<DistanceProfile> = free
            .par_iter()
            .map_init(
                || eval.scratch(),
                |scratch, &u| match mode {
                    Recompute::Localized => {
                        let (comp, before) = &pieces[piece_of[u]];
                        let mut rest = comp.clone();
                        rest.set(u, false);
                        let mut after = total.clone();
                        after.remove(before);
                        after.absorb(&eval.profile_with(&rest, scratch));
                        after
                    }
                    Recompute::Full => {
                        let mut rest = mask.clone();
                        rest.set(u, false);
                        eval.profile_with(&rest, scratch)
                    }
                },
            )
            .collect();

        let mut pick = 0;
        for i in 1..free.len() {
            if cost_cmp(outcomes[i].inefficiency(), outcomes[pick].inefficiency()) == Ordering::Less {
                pick = i;
            }
        }
        let victim = free[pick];
        mask.set(victim, false);
        total = outcomes[pick].clone();
        if mode == Recompute::Localized {
            let (comp, _) = pieces.swap_remove(piece_of[victim]);
            let mut rest = comp;
            rest.set(victim, false);
            for c in eval.components(&rest) {
                let p = eval.profile(&c);
                pieces.push((c, p));
            }
        }
        steps.push(TraceStep {
            vertex_removed: Some(eval.global(victim)),
            inefficiency_after: total.inefficiency(),
            solution_size: mask.count_ones(..),
        });
    }

    let mut best_step = 0;
    for (j, step) in steps.iter().enumerate().skip(1) {
        let best = &steps[best_step];
        let better = match cost_cmp(step.inefficiency_after, best.inefficiency_after) {
            Ordering::Less => true,
            Ordering::Equal => step.solution_size < best.solution_size,
            Ordering::Greater => false,
        };
        if better {
            best_step = j;
        }
    }
    let trace = RelaxTrace { steps, best_step };
    let solution = trace.solution_at(seed, best_step);
    Ok((solution, trace))
}

/// Best `query ∪ R` over every `R ⊆ seed ∖ query`; ties go to fewer vertices,
/// then to the lexicographically smallest `R`.
pub fn exhaustive_relax(g: &Graph, seed: &VertexSet, query: &VertexSet, cap: usize) -> Result<VertexSet> {
    check_seed(g, seed, query)?;
    let free = seed.len() - query.len();
    if free > cap || free > MAX_ENUMERABLE {
        return Err(Error::CapExceeded { size: free, cap });
    }
    let eval = SubsetEvaluator::new(g, seed);
    Ok(eval.set_of(&best_extension(&eval, query)))
}

/// Exact minimum-inefficiency superset of `query` by full enumeration.
pub fn brute_force_mis(g: &Graph, query: &VertexSet, cap: usize) -> Result<VertexSet> {
    check_query(g, query)?;
    let free = g.vertex_count() - query.len();
    if free > cap || free > MAX_ENUMERABLE {
        return Err(Error::CapExceeded { size: free, cap });
    }
    let eval = SubsetEvaluator::new(g, &VertexSet::full(g.vertex_count()));
    Ok(eval.set_of(&best_extension(&eval, query)))
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    cost: f64,
    size: u32,
    bits: u64,
}

/// Lexicographic comparison of the ascending position lists encoded by two
/// bitmasks.
fn lex_cmp(mut a: u64, mut b: u64) -> Ordering {
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            (false, false) => {
                let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
                if la != lb {
                    return la.cmp(&lb);
                }
                a &= a - 1;
                b &= b - 1;
            }
        }
    }
}

impl Candidate {
    fn beats(&self, other: &Candidate) -> bool {
        match cost_cmp(self.cost, other.cost) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match self.size.cmp(&other.size) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => lex_cmp(self.bits, other.bits) == Ordering::Less,
            },
        }
    }
}

/// Scans all extensions of `query` inside the evaluator's host set. Work is
/// split into fixed index ranges and merged in range order, so the winner does
/// not depend on the thread count.
fn best_extension(eval: &SubsetEvaluator, query: &VertexSet) -> Mask {
    let base = eval.mask_of(query);
    let free: Vec<usize> = (0..eval.len()).filter(|&l| !base.contains(l)).collect();
    let total: u64 = 1 << free.len();
    let tasks = total.div_ceil(SUBSETS_PER_TASK);

    let winners: Vec<Candidate> = (0..tasks)
        .into_par_iter()
        .map_init(
            || (eval.scratch(), base.clone()),
            |(scratch, mask), task| {
                let start = task * SUBSETS_PER_TASK;
                let end = (start + SUBSETS_PER_TASK).min(total);
                let mut best: Option<Candidate> = None;
                for bits in start..end {
                    mask.clone_from(&base);
                    let mut rest = bits;
                    while rest != 0 {
                        mask.insert(free[rest.trailing_zeros() as usize]);
                        rest &= rest - 1;
                    }
                    let cand = Candidate {
                        cost: eval.profile_with(mask, scratch).inefficiency(),
                        size: bits.count_ones(),
                        bits,
                    };
                    if best.as_ref().is_none_or(|b| cand.beats(b)) {
                        best = Some(cand);
                    }
                }
                best.expect("every task covers at least one subset")
            },
        )
        .collect();

    let mut best = winners[0];
    for w in &winners[1..] {
        if w.beats(&best) {
            best = *w;
        }
    }
    let mut mask = base;
    for (i, &l) in free.iter().enumerate() {
        if best.bits >> i & 1 == 1 {
            mask.insert(l);
        }
    }
    mask
}
