//! Fast distance profiles for many induced subgraphs of one host set.
//!
//! Relaxation evaluates inefficiency on thousands of subsets of a seed set
//! `S0`. [`SubsetEvaluator`] fixes `S0` once, stores `G[S0]` as adjacency
//! bitsets over local ranks, and runs bit-parallel BFS restricted to a mask.
//!
//! Twins in `G[S0]` (equal open or equal closed neighborhoods) stay twins in
//! every induced subgraph containing both, and twins have identical distance
//! rows up to swapping their mutual entry. One BFS per twin class present in
//! the mask is therefore enough; its histogram is weighted by the number of
//! class members present.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::graph::{Graph, VertexId, VertexSet};
use crate::metrics::DistanceProfile;

pub type Mask = FixedBitSet;

#[derive(Debug, Clone)]
pub struct SubsetEvaluator {
    vertices: VertexSet,
    adjacency: Vec<FixedBitSet>,
    class_of: Vec<usize>,
    class_count: usize,
}

/// Reusable buffers for [`SubsetEvaluator::profile_with`].
#[derive(Debug, Clone)]
pub struct Scratch {
    visited: FixedBitSet,
    frontier: FixedBitSet,
    next: FixedBitSet,
    members: Vec<u64>,
    seen: Vec<bool>,
}

impl SubsetEvaluator {
    pub fn new(g: &Graph, host: &VertexSet) -> Self {
        let k = host.len();
        let adjacency: Vec<FixedBitSet> = host
            .iter()
            .map(|u| {
                let mut bits = FixedBitSet::with_capacity(k);
                for &v in g.neighbors(u) {
                    if let Some(local) = host.rank(v) {
                        bits.insert(local);
                    }
                }
                bits
            })
            .collect();

        let mut class_of = vec![usize::MAX; k];
        let mut class_count = 0;
        let mut by_closed: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
        for (v, adj) in adjacency.iter().enumerate() {
            let mut closed = adj.clone();
            closed.insert(v);
            by_closed.entry(closed).or_default().push(v);
        }
        let mut singles = Vec::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (_, members) in by_closed {
            if members.len() > 1 {
                groups.push(members);
            } else {
                singles.push(members[0]);
            }
        }
        let mut by_open: HashMap<&FixedBitSet, Vec<usize>> = HashMap::new();
        for &v in &singles {
            by_open.entry(&adjacency[v]).or_default().push(v);
        }
        groups.extend(by_open.into_values());
        // Number classes by smallest member so ids do not depend on hashing.
        groups.iter_mut().for_each(|g| g.sort_unstable());
        groups.sort_unstable_by_key(|g| g[0]);
        for members in groups {
            for v in members {
                class_of[v] = class_count;
            }
            class_count += 1;
        }

        SubsetEvaluator {
            vertices: host.clone(),
            adjacency,
            class_of,
            class_count,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn host(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn local(&self, v: VertexId) -> Option<usize> {
        self.vertices.rank(v)
    }

    pub fn global(&self, local: usize) -> VertexId {
        self.vertices.as_slice()[local]
    }

    pub fn full_mask(&self) -> Mask {
        let mut m = FixedBitSet::with_capacity(self.len());
        m.insert_range(..);
        m
    }

    pub fn mask_of(&self, set: &VertexSet) -> Mask {
        let mut m = FixedBitSet::with_capacity(self.len());
        for v in set {
            if let Some(l) = self.local(v) {
                m.insert(l);
            }
        }
        m
    }

    pub fn set_of(&self, mask: &Mask) -> VertexSet {
        VertexSet::new(mask.ones().map(|l| self.global(l)).collect())
    }

    pub fn scratch(&self) -> Scratch {
        let k = self.len();
        Scratch {
            visited: FixedBitSet::with_capacity(k),
            frontier: FixedBitSet::with_capacity(k),
            next: FixedBitSet::with_capacity(k),
            members: vec![0; self.class_count],
            seen: vec![false; self.class_count],
        }
    }

    pub fn profile(&self, mask: &Mask) -> DistanceProfile {
        self.profile_with(mask, &mut self.scratch())
    }

    /// Distance profile of the subgraph induced by `mask`.
    pub fn profile_with(&self, mask: &Mask, s: &mut Scratch) -> DistanceProfile {
        let mut profile = DistanceProfile::new(mask.count_ones(..));
        s.members.fill(0);
        s.seen.fill(false);
        for v in mask.ones() {
            s.members[self.class_of[v]] += 1;
        }
        for source in mask.ones() {
            let class = self.class_of[source];
            if s.seen[class] {
                continue;
            }
            s.seen[class] = true;
            let weight = s.members[class];
            s.visited.clear();
            s.visited.insert(source);
            s.frontier.clear();
            s.frontier.insert(source);
            let mut depth = 0;
            loop {
                s.next.clear();
                for u in s.frontier.ones() {
                    s.next.union_with(&self.adjacency[u]);
                }
                s.next.intersect_with(mask);
                s.next.difference_with(&s.visited);
                let reached = s.next.count_ones(..) as u64;
                if reached == 0 {
                    break;
                }
                depth += 1;
                profile.record(depth, reached * weight);
                s.visited.union_with(&s.next);
                std::mem::swap(&mut s.frontier, &mut s.next);
            }
        }
        profile
    }

    /// Connected components of the subgraph induced by `mask`, ordered by
    /// smallest member.
    pub fn components(&self, mask: &Mask) -> Vec<Mask> {
        let mut left = mask.clone();
        let mut out = Vec::new();
        let mut frontier = FixedBitSet::with_capacity(self.len());
        let mut next = FixedBitSet::with_capacity(self.len());
        while let Some(root) = left.minimum() {
            let mut comp = FixedBitSet::with_capacity(self.len());
            comp.insert(root);
            frontier.clear();
            frontier.insert(root);
            loop {
                next.clear();
                for u in frontier.ones() {
                    next.union_with(&self.adjacency[u]);
                }
                next.intersect_with(mask);
                next.difference_with(&comp);
                if next.is_clear() {
                    break;
                }
                comp.union_with(&next);
                std::mem::swap(&mut frontier, &mut next);
            }
            left.difference_with(&comp);
            out.push(comp);
        }
        out
    }
}
