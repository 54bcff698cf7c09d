//! Community-aware query sampling and a planted-partition generator.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

/// Total map from vertex to a dense community id `0..c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityAssignment {
    membership: Vec<usize>,
    members: Vec<Vec<VertexId>>,
}

impl CommunityAssignment {
    /// Accepts arbitrary community ids and renumbers them densely in
    /// ascending order of the original id.
    pub fn new(raw: Vec<usize>) -> Self {
        let mut ids = raw.clone();
        ids.sort_unstable();
        ids.dedup();
        let membership: Vec<usize> = raw
            .iter()
            .map(|c| ids.binary_search(c).expect("id collected above"))
            .collect();
        let mut members = vec![Vec::new(); ids.len()];
        for (v, &c) in membership.iter().enumerate() {
            members[c].push(v);
        }
        CommunityAssignment {
            membership,
            members,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.membership.len()
    }

    pub fn community_count(&self) -> usize {
        self.members.len()
    }

    pub fn community_of(&self, v: VertexId) -> usize {
        self.membership[v]
    }

    pub fn members(&self, c: usize) -> &[VertexId] {
        &self.members[c]
    }

    pub fn membership(&self) -> &[usize] {
        &self.membership
    }
}

/// Query shape: `n` vertices from one home community plus `m` vertices
/// spread round-robin over `k` other communities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryParams {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
}

impl QueryParams {
    pub fn validate(&self) -> Result<()> {
        if self.n + self.m == 0 {
            return Err(Error::Infeasible("n + m must be at least 1".into()));
        }
        if self.m > 0 && !(1..=self.m).contains(&self.k) {
            return Err(Error::Infeasible(format!(
                "k = {} must lie in 1..={} when m > 0",
                self.k, self.m
            )));
        }
        Ok(())
    }

    /// Largest share of `m` any single other community must supply.
    fn per_other(&self) -> usize {
        if self.m == 0 {
            0
        } else {
            self.m.div_ceil(self.k)
        }
    }

    fn others(&self) -> usize {
        if self.m == 0 {
            0
        } else {
            self.k
        }
    }
}

pub fn generate_query(g: &Graph, communities: &CommunityAssignment, params: &QueryParams) -> Result<VertexSet> {
    params.validate()?;
    if communities.vertex_count() != g.vertex_count() {
        return Err(Error::Invalid(format!(
            "community assignment covers {} vertices, graph has {}",
            communities.vertex_count(),
            g.vertex_count()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let c = communities.community_count();
    let need = params.per_other();
    let big_enough = |x: usize| communities.members(x).len() >= need;

    let homes: Vec<usize> = (0..c)
        .filter(|&h| communities.members(h).len() >= params.n)
        .filter(|&h| (0..c).filter(|&o| o != h && big_enough(o)).count() >= params.others())
        .collect();
    if homes.is_empty() {
        let largest = (0..c).map(|x| communities.members(x).len()).max().unwrap_or(0);
        return Err(Error::Infeasible(if largest < params.n {
            format!("no community has n = {} members (largest has {largest})", params.n)
        } else {
            format!(
                "no community with {} members has {} other communities of size >= {need}",
                params.n,
                params.others()
            )
        }));
    }
    let home = homes[rng.gen_range(0..homes.len())];

    let mut chosen = sample_members(communities.members(home), params.n, &mut rng);
    if params.m > 0 {
        let eligible: Vec<usize> = (0..c).filter(|&o| o != home && big_enough(o)).collect();
        let picked = index::sample(&mut rng, eligible.len(), params.k);
        for (j, idx) in picked.iter().enumerate() {
            let share = params.m / params.k + usize::from(j < params.m % params.k);
            chosen.extend(sample_members(communities.members(eligible[idx]), share, &mut rng));
        }
    }
    Ok(VertexSet::new(chosen))
}

fn sample_members(pool: &[VertexId], amount: usize, rng: &mut ChaCha8Rng) -> Vec<VertexId> {
    index::sample(rng, pool.len(), amount)
        .iter()
        .map(|i| pool[i])
        .collect()
}

/// `communities` blocks of `size` consecutive vertices; each intra-block pair
/// is an edge with probability `p_in`, each inter-block pair with `p_out`.
pub fn planted_partition(
    communities: usize,
    size: usize,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> Result<(Graph, CommunityAssignment)> {
    if !(0.0..=1.0).contains(&p_in) || !(0.0..=1.0).contains(&p_out) || p_out > p_in {
        return Err(Error::Invalid(format!(
            "need 0 <= p_out <= p_in <= 1, got p_in = {p_in}, p_out = {p_out}"
        )));
    }
    let n = communities * size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if u / size == v / size { p_in } else { p_out };
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::from_edges(&edges, n)?;
    let membership = (0..n).map(|v| v / size.max(1)).collect();
    Ok((graph, CommunityAssignment::new(membership)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn profile(q: &VertexSet, c: &CommunityAssignment) -> Vec<usize> {
        let mut counts = vec![0; c.community_count()];
        for v in q {
            counts[c.community_of(v)] += 1;
        }
        let mut nonzero: Vec<usize> = counts.into_iter().filter(|&x| x > 0).collect();
        nonzero.sort_unstable_by(|a, b| b.cmp(a));
        nonzero
    }

    #[test]
    fn planted_extremes() {
        let (g, c) = planted_partition(3, 5, 1.0, 0.0, 7).unwrap();
        assert_eq!(g.edge_count(), 3 * 10);
        assert_eq!(g.connected_components().len(), 3);
        assert_eq!(c.community_count(), 3);

        let (g, _) = planted_partition(3, 5, 0.0, 0.0, 7).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn planted_is_reproducible() {
        let a = planted_partition(4, 50, 0.3, 0.01, 42).unwrap();
        let b = planted_partition(4, 50, 0.3, 0.01, 42).unwrap();
        assert_eq!(a, b);
        let c = planted_partition(4, 50, 0.3, 0.01, 43).unwrap();
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn planted_rejects_bad_probabilities() {
        assert!(planted_partition(2, 3, 0.2, 0.5, 0).is_err());
        assert!(planted_partition(2, 3, 1.5, 0.0, 0).is_err());
        assert!(planted_partition(2, 3, 0.5, -0.1, 0).is_err());
    }

    #[test]
    fn query_examples() {
        let (g, c) = planted_partition(6, 12, 0.5, 0.0, 1).unwrap();
        let q = generate_query(&g, &c, &QueryParams { n: 5, m: 0, k: 0, seed: 3 }).unwrap();
        assert_eq!(profile(&q, &c), vec![5]);

        let (g, c) = planted_partition(15, 12, 0.5, 0.0, 1).unwrap();
        let q = generate_query(&g, &c, &QueryParams { n: 10, m: 3, k: 3, seed: 3 }).unwrap();
        assert_eq!(profile(&q, &c), vec![10, 1, 1, 1]);

        let q = generate_query(&g, &c, &QueryParams { n: 0, m: 4, k: 2, seed: 3 }).unwrap();
        assert_eq!(profile(&q, &c), vec![2, 2]);
    }

    #[test]
    fn infeasible_names_constraint() {
        let (g, c) = planted_partition(3, 4, 1.0, 0.0, 1).unwrap();
        let err = generate_query(&g, &c, &QueryParams { n: 5, m: 0, k: 0, seed: 0 }).unwrap_err();
        assert!(err.to_string().contains("n = 5"), "{err}");
        let err = generate_query(&g, &c, &QueryParams { n: 2, m: 3, k: 3, seed: 0 }).unwrap_err();
        assert!(err.to_string().contains("other communities"), "{err}");
        assert!(generate_query(&g, &c, &QueryParams { n: 2, m: 2, k: 3, seed: 0 }).is_err());
    }

    #[test]
    fn community_ids_are_densified() {
        let c = CommunityAssignment::new(vec![10, 4, 10, 7]);
        assert_eq!(c.membership(), &[2, 0, 2, 1]);
        assert_eq!(c.members(2), &[0, 2]);
    }

    proptest! {
        #[test]
        fn query_has_exact_profile(n in 0usize..8, m in 0usize..9, k_raw in 1usize..9, seed in any::<u64>()) {
            prop_assume!(n + m >= 1);
            let k = if m == 0 { 0 } else { 1 + (k_raw - 1) % m };
            let (g, c) = planted_partition(10, 9, 0.4, 0.02, 5).unwrap();
            let params = QueryParams { n, m, k, seed };
            let q = generate_query(&g, &c, &params).unwrap();
            prop_assert_eq!(q.len(), n + m);
            q.validate(g.vertex_count()).unwrap();
            prop_assert_eq!(&q, &generate_query(&g, &c, &params).unwrap());

            let mut counts = vec![0usize; c.community_count()];
            for v in &q {
                counts[c.community_of(v)] += 1;
            }
            // Some community holds the n home vertices; the rest is spread
            // over exactly k others with shares differing by at most one.
            let found = (0..c.community_count()).any(|h| {
                if counts[h] < n {
                    return false;
                }
                let mut rest: Vec<usize> = counts
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| if i == h { x - n } else { x })
                    .filter(|&x| x > 0)
                    .collect();
                if counts[h] - n > 0 {
                    return false;
                }
                rest.sort_unstable();
                rest.len() == k && rest.iter().sum::<usize>() == m
                    && rest.first().zip(rest.last()).is_none_or(|(a, b)| b - a <= 1)
            });
            prop_assert!(found, "counts {:?}", counts);
        }
    }
}
