//! Immutable simple undirected graphs over dense vertex ids.
//!
//! Every [`Graph`] is in canonical form: no self-loops, no parallel edges,
//! symmetric adjacency and ascending neighbor lists. Algorithms rely on the
//! sorted lists for deterministic iteration order.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Hop distance in an unweighted graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    /// `1/d`, with the unreachable case mapped to exactly zero.
    pub fn reciprocal(self) -> f64 {
        match self {
            Distance::Finite(0) => f64::INFINITY,
            Distance::Finite(d) => 1.0 / f64::from(d),
            Distance::Unreachable => 0.0,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("inf"),
        }
    }
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new(mut members: Vec<VertexId>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(vec![v])
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<VertexId> {
        self.0
    }

    /// Position of `v` within the sorted members.
    pub fn rank(&self, v: VertexId) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.first_missing_from(other).is_none()
    }

    /// Smallest member of `self` absent from `other`.
    pub fn first_missing_from(&self, other: &VertexSet) -> Option<VertexId> {
        self.iter().find(|&v| !other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut members = Vec::with_capacity(self.len() + other.len());
        members.extend_from_slice(&self.0);
        members.extend_from_slice(&other.0);
        VertexSet::new(members)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn without(&self, v: VertexId) -> VertexSet {
        VertexSet(self.iter().filter(|&u| u != v).collect())
    }

    pub fn validate(&self, vertex_count: usize) -> Result<()> {
        match self.0.last() {
            Some(&max) if max >= vertex_count => Err(Error::VertexOutOfRange {
                id: max,
                vertex_count,
                line: None,
            }),
            _ => Ok(()),
        }
    }
}

impl From<Vec<VertexId>> for VertexSet {
    fn from(v: Vec<VertexId>) -> Self {
        VertexSet::new(v)
    }
}

impl From<VertexSet> for Vec<VertexId> {
    fn from(s: VertexSet) -> Self {
        s.0
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = VertexId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, VertexId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a canonical graph from an edge list. Duplicate edges collapse
    /// silently; self-loops and out-of-range ids are rejected, reporting the
    /// 1-based position of the offending edge.
    pub fn from_edges(edges: &[(VertexId, VertexId)], vertex_count: usize) -> Result<Graph> {
        Self::from_numbered_edges(
            edges.iter().enumerate().map(|(i, &(u, v))| (u, v, i + 1)),
            vertex_count,
        )
    }

    pub(crate) fn from_numbered_edges(
        edges: impl IntoIterator<Item = (VertexId, VertexId, usize)>,
        vertex_count: usize,
    ) -> Result<Graph> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (u, v, line) in edges {
            for id in [u, v] {
                if id >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        id,
                        vertex_count,
                        line: Some(line),
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop {
                    vertex: u,
                    line: Some(line),
                });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut degree_sum = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            degree_sum += list.len();
        }
        Ok(Graph {
            adjacency,
            edge_count: degree_sum / 2,
            labels: None,
        })
    }

    pub fn edgeless(vertex_count: usize) -> Graph {
        Graph {
            adjacency: vec![Vec::new(); vertex_count],
            edge_count: 0,
            labels: None,
        }
    }

    /// Attaches external names; `labels[v]` names vertex `v`.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.vertex_count() {
            return Err(Error::Invalid(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// External name of `v`: its label, or the decimal id.
    pub fn name(&self, v: VertexId) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    /// Edges with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `subset`, renumbered by rank within `subset`.
    pub fn induced_subgraph(&self, subset: &VertexSet) -> InducedSubgraph {
        let mut degree_sum = 0;
        let adjacency: Vec<Vec<VertexId>> = subset
            .iter()
            .map(|u| {
                let list: Vec<VertexId> = self.adjacency[u]
                    .iter()
                    .filter_map(|&v| subset.rank(v))
                    .collect();
                degree_sum += list.len();
                list
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|labels| subset.iter().map(|v| labels[v].clone()).collect());
        InducedSubgraph {
            graph: Graph {
                adjacency,
                edge_count: degree_sum / 2,
                labels,
            },
            vertices: subset.clone(),
        }
    }

    pub fn bfs_distances(&self, source: VertexId) -> Vec<Distance> {
        let mut dist = vec![Distance::Unreachable; self.vertex_count()];
        dist[source] = Distance::Finite(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = match dist[u] {
                Distance::Finite(d) => Distance::Finite(d + 1),
                Distance::Unreachable => unreachable!("queued vertices are reached"),
            };
            for &v in &self.adjacency[u] {
                if dist[v] == Distance::Unreachable {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Connected components ordered by their smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            stack.push(root);
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            components.push(VertexSet::new(members));
        }
        components
    }

    /// Component id per vertex, numbered in order of smallest member.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.vertex_count()];
        for (c, comp) in self.connected_components().iter().enumerate() {
            for v in comp {
                labels[v] = c;
            }
        }
        labels
    }
}

/// An induced subgraph together with its id mapping back to the parent.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// Parent ids in local order; local id `i` is `vertices.as_slice()[i]`.
    pub vertices: VertexSet,
}

impl InducedSubgraph {
    pub fn to_parent(&self, local: VertexId) -> VertexId {
        self.vertices.as_slice()[local]
    }

    pub fn to_local(&self, parent: VertexId) -> Option<VertexId> {
        self.vertices.rank(parent)
    }

    pub fn set_to_parent(&self, local: &VertexSet) -> VertexSet {
        local.iter().map(|v| self.to_parent(v)).collect()
    }
}



#[cfg(test)]
pub(crate) use tests::arb_graph;
