//! Scalar graph measures built on shortest-path distances.
//!
//! Distance-based measures go through a [`DistanceProfile`], an integer
//! histogram of ordered vertex pairs by hop count. Histograms add exactly, so
//! totals do not depend on how per-source work is scheduled or split across
//! components; the only rounding happens in the final ascending-distance sum.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Distance, Graph, VertexId};

const SOURCE_CHUNK: usize = 64;

/// Ordered-pair distance histogram of a graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistanceProfile {
    vertex_count: usize,
    /// `counts[d]` = number of ordered pairs at hop distance `d >= 1`.
    counts: Vec<u64>,
}

impl DistanceProfile {
    pub fn new(vertex_count: usize) -> Self {
        DistanceProfile {
            vertex_count,
            counts: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn set_vertex_count(&mut self, n: usize) {
        self.vertex_count = n;
    }

    /// Records `pairs` ordered pairs at distance `d`.
    pub fn record(&mut self, d: usize, pairs: u64) {
        if d >= self.counts.len() {
            self.counts.resize(d + 1, 0);
        }
        self.counts[d] += pairs;
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn ordered_pairs(&self) -> u64 {
        let n = self.vertex_count as u64;
        n * n.saturating_sub(1)
    }

    pub fn reachable_pairs(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Adds another profile, vertex count included; used to combine
    /// components of one graph.
    pub fn absorb(&mut self, other: &DistanceProfile) {
        self.vertex_count += other.vertex_count;
        for (d, &c) in other.counts.iter().enumerate() {
            if c > 0 {
                self.record(d, c);
            }
        }
    }

    /// Inverse of [`absorb`](Self::absorb).
    pub fn remove(&mut self, other: &DistanceProfile) {
        self.vertex_count -= other.vertex_count;
        for (d, &c) in other.counts.iter().enumerate() {
            self.counts[d] -= c;
        }
        while self.counts.last() == Some(&0) {
            self.counts.pop();
        }
    }

    /// Sum of harmonic centralities, `C(G)`.
    pub fn harmonic_total(&self) -> f64 {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, &c)| c as f64 / d as f64)
            .sum()
    }

    /// `n(n-1) - C(G)`.
    pub fn inefficiency(&self) -> f64 {
        self.ordered_pairs() as f64 - self.harmonic_total()
    }

    pub fn efficiency(&self) -> Result<f64> {
        if self.vertex_count < 2 {
            return Err(Error::Undefined(format!(
                "efficiency needs at least 2 vertices, got {}",
                self.vertex_count
            )));
        }
        Ok(self.harmonic_total() / self.ordered_pairs() as f64)
    }

    /// Sum of distances over unordered pairs, `None` when disconnected.
    pub fn wiener_index(&self) -> Option<u64> {
        if self.reachable_pairs() != self.ordered_pairs() {
            return None;
        }
        let ordered: u64 = self
            .counts
            .iter()
            .enumerate()
            .map(|(d, &c)| d as u64 * c)
            .sum();
        Some(ordered / 2)
    }

    pub fn diameter(&self) -> Option<usize> {
        if self.reachable_pairs() != self.ordered_pairs() {
            return None;
        }
        Some(self.counts.len().saturating_sub(1))
    }
}

fn bfs_histogram(g: &Graph, source: VertexId, dist: &mut [u32], queue: &mut VecDeque<VertexId>, profile: &mut DistanceProfile) {
    dist.fill(u32::MAX);
    dist[source] = 0;
    queue.clear();
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        if du > 0 {
            profile.record(du as usize, 1);
        }
        for &v in g.neighbors(u) {
            if dist[v] == u32::MAX {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
}

/// All-pairs distance histogram by one BFS per source.
pub fn distance_profile(g: &Graph) -> DistanceProfile {
    let n = g.vertex_count();
    let sources: Vec<VertexId> = (0..n).collect();
    let partials: Vec<DistanceProfile> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut profile = DistanceProfile::new(0);
            let mut dist = vec![0u32; n];
            let mut queue = VecDeque::with_capacity(n);
            for &s in chunk {
                bfs_histogram(g, s, &mut dist, &mut queue, &mut profile);
            }
            profile
        })
        .collect();
    let mut total = DistanceProfile::new(0);
    for p in &partials {
        total.absorb(p);
    }
    total.set_vertex_count(n);
    total
}

/// `c(u) = Σ_{v≠u} 1/d(v,u)`, unreachable vertices contributing zero.
pub fn harmonic_centrality(g: &Graph, u: VertexId) -> f64 {
    let mut profile = DistanceProfile::new(0);
    let mut dist = vec![0u32; g.vertex_count()];
    bfs_histogram(g, u, &mut dist, &mut VecDeque::new(), &mut profile);
    profile.harmonic_total()
}

pub fn total_harmonic(g: &Graph) -> f64 {
    distance_profile(g).harmonic_total()
}

/// Σ over ordered pairs `u≠v` of `1 - 1/d(u,v)`.
pub fn inefficiency(g: &Graph) -> f64 {
    distance_profile(g).inefficiency()
}

pub fn efficiency(g: &Graph) -> Result<f64> {
    distance_profile(g).efficiency()
}

/// `None` stands for an infinite index (disconnected graph).
pub fn wiener_index(g: &Graph) -> Option<u64> {
    distance_profile(g).wiener_index()
}

pub fn density(g: &Graph) -> Result<f64> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::Undefined(format!(
            "density needs at least 2 vertices, got {n}"
        )));
    }
    Ok(g.edge_count() as f64 / (n * (n - 1) / 2) as f64)
}

fn brandes_from(g: &Graph, s: VertexId, acc: &mut [f64]) {
    let n = g.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut preds: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![Distance::Unreachable; n];
    sigma[s] = 1.0;
    dist[s] = Distance::Finite(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        let Distance::Finite(dv) = dist[v] else {
            unreachable!()
        };
        for &w in g.neighbors(v) {
            if dist[w] == Distance::Unreachable {
                dist[w] = Distance::Finite(dv + 1);
                queue.push_back(w);
            }
            if dist[w] == Distance::Finite(dv + 1) {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }
    let mut delta = vec![0.0f64; n];
    while let Some(w) = order.pop() {
        for &v in &preds[w] {
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
        if w != s {
            acc[w] += delta[w];
        }
    }
}

/// Exact shortest-path betweenness, normalized by `(n-1)(n-2)`.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    if n < 3 {
        return vec![0.0; n];
    }
    let sources: Vec<VertexId> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            for &s in chunk {
                brandes_from(g, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for part in &partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    let scale = ((n - 1) * (n - 2)) as f64;
    total.iter_mut().for_each(|b| *b /= scale);
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::arb_graph;
    use crate::graph::fixtures::*;
    use proptest::prelude::*;

    /// Independent pair enumeration: Floyd-Warshall distances, no BFS.
    fn floyd(g: &Graph) -> Vec<Vec<Option<u32>>> {
        let n = g.vertex_count();
        let mut d = vec![vec![None; n]; n];
        for u in 0..n {
            d[u][u] = Some(0);
            for &v in g.neighbors(u) {
                d[u][v] = Some(1);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                        if d[i][j].is_none_or(|c| a + b < c) {
                            d[i][j] = Some(a + b);
                        }
                    }
                }
            }
        }
        d
    }

    fn oracle_inefficiency(g: &Graph) -> f64 {
        let d = floyd(g);
        let n = g.vertex_count();
        let mut total = 0.0;
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    total += 1.0 - d[u][v].map_or(0.0, |x| 1.0 / x as f64);
                }
            }
        }
        total
    }

    /// Betweenness by explicit shortest-path counting through each vertex.
    fn oracle_betweenness(g: &Graph) -> Vec<f64> {
        let n = g.vertex_count();
        let d = floyd(g);
        // paths[s][t] = number of shortest s-t paths
        let mut paths = vec![vec![0.0f64; n]; n];
        for s in 0..n {
            let mut by_dist: Vec<usize> = (0..n).filter(|&t| d[s][t].is_some()).collect();
            by_dist.sort_by_key(|&t| d[s][t]);
            paths[s][s] = 1.0;
            for &t in &by_dist {
                if t == s {
                    continue;
                }
                let dt = d[s][t].unwrap();
                paths[s][t] = g
                    .neighbors(t)
                    .iter()
                    .filter(|&&p| d[s][p] == Some(dt - 1))
                    .map(|&p| paths[s][p])
                    .sum();
            }
        }
        let mut bc = vec![0.0; n];
        if n < 3 {
            return bc;
        }
        for v in 0..n {
            for s in 0..n {
                for t in 0..n {
                    if s == t || s == v || t == v {
                        continue;
                    }
                    if let (Some(st), Some(sv), Some(vt)) = (d[s][t], d[s][v], d[v][t]) {
                        if sv + vt == st {
                            bc[v] += paths[s][v] * paths[v][t] / paths[s][t];
                        }
                    }
                }
            }
            bc[v] /= ((n - 1) * (n - 2)) as f64;
        }
        bc
    }

    fn disjoint_clique_plus_isolated(clique_size: usize, isolated: usize) -> Graph {
        let edges: Vec<_> = (0..clique_size)
            .flat_map(|u| (u + 1..clique_size).map(move |v| (u + isolated, v + isolated)))
            .collect();
        Graph::from_edges(&edges, clique_size + isolated).unwrap()
    }

    #[test]
    fn harmonic_examples() {
        let g = Graph::from_edges(&[(0, 1)], 3).unwrap();
        assert_eq!(harmonic_centrality(&g, 2), 0.0);
        assert_eq!(harmonic_centrality(&star(4), 0), 4.0);
        assert_eq!(harmonic_centrality(&star(4), 1), 2.5);
    }

    #[test]
    fn total_harmonic_examples() {
        assert_eq!(total_harmonic(&clique(7)), 42.0);
        assert_eq!(total_harmonic(&Graph::edgeless(5)), 0.0);
        assert_eq!(total_harmonic(&disjoint_clique_plus_isolated(100, 3)), 9900.0);
    }

    #[test]
    fn inefficiency_examples() {
        assert_eq!(inefficiency(&Graph::edgeless(3)), 6.0);
        assert_eq!(inefficiency(&Graph::edgeless(4)), 12.0);
        assert_eq!(inefficiency(&disjoint_clique_plus_isolated(100, 3)), 606.0);
    }

    #[test]
    fn efficiency_examples() {
        assert_eq!(efficiency(&clique(5)).unwrap(), 1.0);
        assert_eq!(efficiency(&Graph::edgeless(5)).unwrap(), 0.0);
        let e = efficiency(&disjoint_clique_plus_isolated(100, 3)).unwrap();
        assert!((e - 0.942).abs() <= 0.001, "{e}");
        assert!(matches!(efficiency(&Graph::edgeless(1)), Err(Error::Undefined(_))));
    }

    #[test]
    fn wiener_examples() {
        assert_eq!(wiener_index(&path(2)), Some(1));
        assert_eq!(wiener_index(&path(3)), Some(4));
        assert_eq!(wiener_index(&Graph::edgeless(2)), None);
    }

    #[test]
    fn betweenness_examples() {
        assert!(betweenness(&clique(5)).iter().all(|&b| b == 0.0));
        assert_eq!(betweenness(&star(4))[0], 1.0);
        assert_eq!(betweenness(&path(3))[1], 1.0);
        assert_eq!(betweenness(&path(3))[0], 0.0);
    }

    #[test]
    fn density_examples() {
        assert_eq!(density(&clique(4)).unwrap(), 1.0);
        assert!((density(&path(3)).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(density(&Graph::edgeless(4)).unwrap(), 0.0);
        assert!(density(&Graph::edgeless(1)).is_err());
    }

    #[test]
    fn profile_absorb_and_remove_roundtrip() {
        let a = distance_profile(&path(4));
        let b = distance_profile(&clique(3));
        let mut t = a.clone();
        t.absorb(&b);
        assert_eq!(t.vertex_count(), 7);
        t.remove(&b);
        assert_eq!(t, a);
    }

    proptest! {
        #[test]
        fn identities_hold(g in arb_graph(30)) {
            let n = g.vertex_count() as f64;
            let c = total_harmonic(&g);
            let i = inefficiency(&g);
            prop_assert!((i - (n * (n - 1.0) - c)).abs() < 1e-9);
            prop_assert!((0.0..=n * (n - 1.0)).contains(&i));
            if g.vertex_count() >= 2 {
                prop_assert!((efficiency(&g).unwrap() - c / (n * (n - 1.0))).abs() < 1e-9);
            }
        }

        #[test]
        fn matches_floyd_oracle(g in arb_graph(30)) {
            prop_assert!((inefficiency(&g) - oracle_inefficiency(&g)).abs() < 1e-9);
            let d = floyd(&g);
            for u in 0..g.vertex_count() {
                let expected: f64 = (0..g.vertex_count())
                    .filter(|&v| v != u)
                    .map(|v| d[v][u].map_or(0.0, |x| 1.0 / x as f64))
                    .sum();
                prop_assert!((harmonic_centrality(&g, u) - expected).abs() < 1e-9);
            }
            let connected = d.iter().flatten().all(Option::is_some);
            let expected_wiener: Option<u64> = connected.then(|| {
                d.iter().flatten().map(|x| x.unwrap() as u64).sum::<u64>() / 2
            });
            prop_assert_eq!(wiener_index(&g), expected_wiener);
            for (a, b) in betweenness(&g).iter().zip(oracle_betweenness(&g)) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }

        #[test]
        fn isolated_vertex_adds_2n(g in arb_graph(30)) {
            let n = g.vertex_count();
            let edges: Vec<_> = g.edges().collect();
            let bigger = Graph::from_edges(&edges, n + 1).unwrap();
            prop_assert!((inefficiency(&bigger) - inefficiency(&g) - 2.0 * n as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn clique_and_edgeless_extremes() {
        for n in 1..12 {
            assert_eq!(inefficiency(&clique(n)), 0.0);
            assert_eq!(inefficiency(&Graph::edgeless(n)), (n * (n - 1)) as f64);
        }
    }
}
