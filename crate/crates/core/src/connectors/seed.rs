use std::collections::VecDeque;

use super::{check_query, group_by_component};
use crate::error::Result;
use crate::graph::{Distance, Graph, VertexId, VertexSet};
use crate::metrics;

/// Cap on extra high-degree roots tried per query group.
const MAX_EXTRA_ROOTS: usize = 50;
const EXTRA_ROOTS_PER_QUERY: usize = 5;

/// Connected superset of each query group with small Wiener index.
///
/// Every query group (query vertices sharing a component of `g`) gets its own
/// connector; the union is returned. A connector is the union of BFS-tree
/// paths from a root to each query vertex. Roots tried: the query vertices
/// plus the highest-degree vertices near the group. The root whose connector
/// has the smallest Wiener index wins; earlier roots win ties.
pub fn mwc_connector(g: &Graph, query: &VertexSet) -> Result<VertexSet> {
    check_query(g, query)?;
    let mut out = VertexSet::empty();
    for group in group_by_component(g, query) {
        out = out.union(&spt_union_connector(g, &group));
    }
    Ok(out)
}

fn dist_vec(g: &Graph, source: VertexId) -> Vec<Option<u32>> {
    g.bfs_distances(source)
        .into_iter()
        .map(Distance::finite)
        .collect()
}

fn spt_union_connector(g: &Graph, group: &VertexSet) -> VertexSet {
    if group.len() == 1 {
        return group.clone();
    }
    let query_dists: Vec<Vec<Option<u32>>> = group.iter().map(|q| dist_vec(g, q)).collect();
    let spread = query_dists
        .iter()
        .flat_map(|row| group.iter().filter_map(move |q| row[q]))
        .max()
        .unwrap_or(0);
    let radius = spread.div_ceil(2);

    let mut nearby: Vec<VertexId> = (0..g.vertex_count())
        .filter(|&v| !group.contains(v))
        .filter(|&v| query_dists.iter().any(|row| row[v].is_some_and(|d| d <= radius)))
        .collect();
    nearby.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    nearby.truncate((group.len() * EXTRA_ROOTS_PER_QUERY).min(MAX_EXTRA_ROOTS));

    let mut best: Option<(u64, VertexSet)> = None;
    let roots = group.iter().enumerate().map(|(i, q)| (q, Some(i)));
    for (root, known) in roots.chain(nearby.into_iter().map(|v| (v, None))) {
        let dist = match known {
            Some(i) => query_dists[i].clone(),
            None => dist_vec(g, root),
        };
        let connector = path_union(g, &dist, root, group);
        let wiener = metrics::wiener_index(&g.induced_subgraph(&connector).graph)
            .expect("path union is connected");
        if best.as_ref().is_none_or(|(w, _)| wiener < *w) {
            best = Some((wiener, connector));
        }
    }
    best.expect("group has at least one root").1
}

/// Union of one shortest path from `root` to every target; each vertex steps
/// back to its lowest-id neighbor one hop closer to the root.
fn path_union(g: &Graph, dist: &[Option<u32>], root: VertexId, targets: &VertexSet) -> VertexSet {
    let mut members = vec![root];
    for t in targets {
        let mut v = t;
        while v != root {
            members.push(v);
            let dv = dist[v].expect("targets share the root's component");
            v = *g
                .neighbors(v)
                .iter()
                .find(|&&u| dist[u] == Some(dv - 1))
                .expect("BFS parent exists");
        }
    }
    VertexSet::new(members)
}

/// Cocktail-party peeling per query group, unioned.
///
/// Starting from the component holding the group, repeatedly delete the
/// lowest-degree non-query vertex whose removal keeps the group connected,
/// discarding anything cut off from it. The intermediate subgraph with the
/// largest minimum degree is kept (fewest vertices on ties).
pub fn ctp_connector(g: &Graph, query: &VertexSet) -> Result<VertexSet> {
    check_query(g, query)?;
    let mut out = VertexSet::empty();
    for group in group_by_component(g, query) {
        out = out.union(&peel(g, &group));
    }
    Ok(out)
}

/// Vertices reachable from `from` through `alive` vertices other than `skip`.
fn reach(g: &Graph, alive: &[bool], from: VertexId, skip: Option<VertexId>) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if alive[v] && !seen[v] && Some(v) != skip {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

fn peel(g: &Graph, group: &VertexSet) -> VertexSet {
    let n = g.vertex_count();
    let anchor = group.as_slice()[0];
    let mut alive = reach(g, &vec![true; n], anchor, None);
    let mut degree: Vec<usize> = (0..n)
        .map(|v| {
            if alive[v] {
                g.neighbors(v).iter().filter(|&&u| alive[u]).count()
            } else {
                0
            }
        })
        .collect();

    let min_degree = |alive: &[bool], degree: &[usize]| {
        (0..n).filter(|&v| alive[v]).map(|v| degree[v]).min().unwrap_or(0)
    };
    let snapshot = |alive: &[bool]| VertexSet::new((0..n).filter(|&v| alive[v]).collect());

    let mut size = alive.iter().filter(|&&a| a).count();
    let mut best = (min_degree(&alive, &degree), size, snapshot(&alive));

    loop {
        let mut candidates: Vec<VertexId> = (0..n)
            .filter(|&v| alive[v] && !group.contains(v))
            .collect();
        candidates.sort_by_key(|&v| (degree[v], v));
        let removal = candidates.into_iter().find_map(|v| {
            let seen = reach(g, &alive, anchor, Some(v));
            group.iter().all(|q| seen[q]).then_some((v, seen))
        });
        let Some((victim, seen)) = removal else {
            break;
        };
        for v in 0..n {
            if alive[v] && (v == victim || !seen[v]) {
                alive[v] = false;
                size -= 1;
                for &u in g.neighbors(v) {
                    if alive[u] {
                        degree[u] -= 1;
                    }
                }
            }
        }
        let md = min_degree(&alive, &degree);
        if md > best.0 || (md == best.0 && size < best.1) {
            best = (md, size, snapshot(&alive));
        }
    }
    best.2
}
