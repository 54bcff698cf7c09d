use mis_core::connectors::{
    brute_force_mis, cost_cmp, exhaustive_relax, gra_ctp, gra_mis, mwc_connector,
};
use mis_core::io::{parse_communities, parse_edge_list, write_communities, write_edge_list};
use mis_core::metrics::inefficiency;
use mis_core::querygen::{generate_query, planted_partition, QueryParams};
use mis_core::report::solution_stats;
use mis_core::VertexSet;
use std::cmp::Ordering;

#[test]
fn planted_graph_round_trips_and_connects() {
    let (g, c) = planted_partition(3, 8, 0.6, 0.05, 11).unwrap();
    let g2 = parse_edge_list(&write_edge_list(&g)).unwrap();
    assert_eq!(g2.vertex_count(), g.vertex_count());
    assert_eq!(g2.edge_count(), g.edge_count());
    let c2 = parse_communities(&g2, &write_communities(&g, &c)).unwrap();
    assert_eq!(c2.membership(), c.membership());

    let params = QueryParams { n: 3, m: 2, k: 2, seed: 5 };
    let q = generate_query(&g2, &c2, &params).unwrap();
    assert_eq!(q.len(), 5);

    let (greedy, trace) = gra_mis(&g2, &q).unwrap();
    let (ctp, _) = gra_ctp(&g2, &q).unwrap();
    let seed = mwc_connector(&g2, &q).unwrap();
    let exact = exhaustive_relax(&g2, &seed, &q, 20).unwrap();
    for s in [&greedy, &ctp, &exact] {
        assert!(q.is_subset(s));
    }

    let cost = |s: &VertexSet| inefficiency(&g2.induced_subgraph(s).graph);
    assert_eq!(cost_cmp(trace.best_inefficiency(), cost(&greedy)), Ordering::Equal);
    assert_ne!(cost_cmp(cost(&exact), cost(&greedy)), Ordering::Greater);

    let report = solution_stats(&g2, &q, &greedy).unwrap();
    assert_eq!(cost_cmp(report.inefficiency, cost(&greedy)), Ordering::Equal);
    assert_eq!(report.vertex_count, greedy.len());
}

#[test]
fn brute_force_bounds_every_heuristic_on_a_small_graph() {
    let (g, _) = planted_partition(2, 6, 0.5, 0.1, 3).unwrap();
    let q = VertexSet::new(vec![0, 5, 7]);
    let cost = |s: &VertexSet| inefficiency(&g.induced_subgraph(s).graph);
    let best = cost(&brute_force_mis(&g, &q, 22).unwrap());
    let (greedy, _) = gra_mis(&g, &q).unwrap();
    let (ctp, _) = gra_ctp(&g, &q).unwrap();
    assert_ne!(cost_cmp(best, cost(&greedy)), Ordering::Greater);
    assert_ne!(cost_cmp(best, cost(&ctp)), Ordering::Greater);
}
