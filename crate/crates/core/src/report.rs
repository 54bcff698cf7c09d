//! Evaluation statistics for a solution and their batch aggregation.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::metrics;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub inefficiency: f64,
    pub vertex_count: usize,
    /// Edge density of `G[S]`; 0 when `|S| < 2`.
    pub density: f64,
    pub component_count: usize,
    /// Query vertices isolated in `G[S]`.
    pub singleton_query_count: usize,
    pub added_vertices: VertexSet,
    /// Mean betweenness in `G` of the added vertices; 0 when none were added.
    pub mean_betweenness_added: f64,
    /// Mean harmonic centrality in `G` of the added vertices; 0 when none.
    pub mean_harmonic_added: f64,
    pub runtime_ms: Option<f64>,
}

/// Betweenness of every vertex of `G`, computed once and shared by
/// [`solution_stats_with`] calls on the same graph.
pub struct GraphCentrality {
    betweenness: Vec<f64>,
}

impl GraphCentrality {
    pub fn new(g: &Graph) -> Self {
        GraphCentrality {
            betweenness: metrics::betweenness(g),
        }
    }
}

pub fn solution_stats(g: &Graph, query: &VertexSet, solution: &VertexSet) -> Result<SolutionReport> {
    solution_stats_with(g, &GraphCentrality::new(g), query, solution)
}

pub fn solution_stats_with(
    g: &Graph,
    centrality: &GraphCentrality,
    query: &VertexSet,
    solution: &VertexSet,
) -> Result<SolutionReport> {
    solution.validate(g.vertex_count())?;
    if let Some(q) = query.first_missing_from(solution) {
        return Err(Error::Invalid(format!(
            "query vertex {} is not in the solution",
            g.name(q)
        )));
    }
    let sub = g.induced_subgraph(solution);
    let h = &sub.graph;
    let singleton_query_count = query
        .iter()
        .filter(|&q| h.degree(sub.to_local(q).expect("query inside solution")) == 0)
        .count();
    let added = solution.difference(query);
    let mean = |values: Vec<f64>| {
        if values.is_empty() {
            0.0
        } else {
            values.iter().sum::<f64>() / values.len() as f64
        }
    };
    Ok(SolutionReport {
        inefficiency: metrics::inefficiency(h),
        vertex_count: solution.len(),
        density: metrics::density(h).unwrap_or(0.0),
        component_count: h.connected_components().len(),
        singleton_query_count,
        mean_betweenness_added: mean(added.iter().map(|v| centrality.betweenness[v]).collect()),
        mean_harmonic_added: mean(added.iter().map(|v| metrics::harmonic_centrality(g, v)).collect()),
        added_vertices: added,
        runtime_ms: None,
    })
}

/// Field-wise mean of a batch; `added_vertices` is empty and `runtime_ms`
/// is present only if every run carries one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchMean {
    pub runs: usize,
    pub inefficiency: f64,
    pub vertex_count: f64,
    pub density: f64,
    pub component_count: f64,
    pub singleton_query_count: f64,
    pub added_count: f64,
    pub mean_betweenness_added: f64,
    pub mean_harmonic_added: f64,
    pub runtime_ms: Option<f64>,
}

pub fn batch_mean(reports: &[SolutionReport]) -> Option<BatchMean> {
    if reports.is_empty() {
        return None;
    }
    let k = reports.len() as f64;
    let avg = |f: fn(&SolutionReport) -> f64| reports.iter().map(f).sum::<f64>() / k;
    let runtime = reports
        .iter()
        .map(|r| r.runtime_ms)
        .sum::<Option<f64>>()
        .map(|total| total / k);
    Some(BatchMean {
        runs: reports.len(),
        inefficiency: avg(|r| r.inefficiency),
        vertex_count: avg(|r| r.vertex_count as f64),
        density: avg(|r| r.density),
        component_count: avg(|r| r.component_count as f64),
        singleton_query_count: avg(|r| r.singleton_query_count as f64),
        added_count: avg(|r| r.added_vertices.len() as f64),
        mean_betweenness_added: avg(|r| r.mean_betweenness_added),
        mean_harmonic_added: avg(|r| r.mean_harmonic_added),
        runtime_ms: runtime,
    })
}

pub const REPORT_COLUMNS: [&str; 10] = [
    "inefficiency",
    "vertex_count",
    "density",
    "component_count",
    "singleton_query_count",
    "added_count",
    "added_vertices",
    "mean_betweenness_added",
    "mean_harmonic_added",
    "runtime_ms",
];

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn report_cells(r: &SolutionReport) -> Vec<String> {
    let added: Vec<String> = r.added_vertices.iter().map(|v| v.to_string()).collect();
    vec![
        r.inefficiency.to_string(),
        r.vertex_count.to_string(),
        r.density.to_string(),
        r.component_count.to_string(),
        r.singleton_query_count.to_string(),
        r.added_vertices.len().to_string(),
        added.join(" "),
        r.mean_betweenness_added.to_string(),
        r.mean_harmonic_added.to_string(),
        opt(r.runtime_ms),
    ]
}

fn mean_cells(m: &BatchMean) -> Vec<String> {
    vec![
        m.inefficiency.to_string(),
        m.vertex_count.to_string(),
        m.density.to_string(),
        m.component_count.to_string(),
        m.singleton_query_count.to_string(),
        m.added_count.to_string(),
        String::new(),
        m.mean_betweenness_added.to_string(),
        m.mean_harmonic_added.to_string(),
        opt(m.runtime_ms),
    ]
}

/// One row per run, `keys` columns first, then a trailing row whose first
/// key cell is `mean` and whose report cells are batch means.
pub fn write_batch_csv<W: Write>(
    out: W,
    key_columns: &[&str],
    rows: &[(Vec<String>, SolutionReport)],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(key_columns.iter().copied().chain(REPORT_COLUMNS))?;
    for (keys, report) in rows {
        if keys.len() != key_columns.len() {
            return Err(Error::Invalid(format!(
                "{} key cells for {} key columns",
                keys.len(),
                key_columns.len()
            )));
        }
        w.write_record(keys.iter().cloned().chain(report_cells(report)))?;
    }
    let reports: Vec<SolutionReport> = rows.iter().map(|(_, r)| r.clone()).collect();
    if let Some(mean) = batch_mean(&reports) {
        let keys = (0..key_columns.len()).map(|i| if i == 0 { "mean".to_string() } else { String::new() });
        w.write_record(keys.chain(mean_cells(&mean)))?;
    }
    w.flush()?;
    Ok(())
}
