//! Text formats: edge lists, community files, query lists and DOT export.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::querygen::CommunityAssignment;

/// Meaningful tokens of each line, with 1-based line numbers. `#` starts a
/// comment line; blank lines are skipped.
fn token_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

/// Parses an edge list: two tokens per line, or one token to declare an
/// isolated vertex.
///
/// If every token is a non-negative integer the ids are used directly and the
/// graph has `max id + 1` vertices. Otherwise all tokens are labels and ids
/// are assigned in first-seen order.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let lines: Vec<(usize, Vec<&str>)> = token_lines(text).collect();
    for (line, toks) in &lines {
        if toks.len() > 2 {
            return Err(Error::Parse {
                line: *line,
                message: format!("expected 1 or 2 tokens, found {}", toks.len()),
            });
        }
    }
    let numeric = lines
        .iter()
        .all(|(_, toks)| toks.iter().all(|t| t.parse::<usize>().is_ok()));

    if numeric {
        let ids: Vec<(usize, Vec<usize>)> = lines
            .iter()
            .map(|(line, toks)| (*line, toks.iter().map(|t| t.parse().expect("checked numeric")).collect()))
            .collect();
        let n = ids.iter().flat_map(|(_, v)| v.iter()).max().map_or(0, |&m| m + 1);
        let edges = ids
            .iter()
            .filter(|(_, v)| v.len() == 2)
            .map(|(line, v)| (v[0], v[1], *line));
        return Graph::from_numbered_edges(edges, n);
    }

    let mut index: HashMap<&str, VertexId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (line, toks) in &lines {
        let ids: Vec<VertexId> = toks
            .iter()
            .map(|&t| {
                *index.entry(t).or_insert_with(|| {
                    labels.push(t.to_string());
                    labels.len() - 1
                })
            })
            .collect();
        if ids.len() == 2 {
            edges.push((ids[0], ids[1], *line));
        }
    }
    Graph::from_numbered_edges(edges, labels.len())?.with_labels(labels)
}

/// Edge list readable by [`parse_edge_list`]; isolated vertices get their own
/// line so the vertex count survives a round trip.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.name(u), g.name(v));
    }
    for v in (0..g.vertex_count()).filter(|&v| g.degree(v) == 0) {
        let _ = writeln!(out, "{}", g.name(v));
    }
    out
}

/// Maps external vertex names to ids.
pub struct VertexLookup<'g> {
    graph: &'g Graph,
    by_label: Option<HashMap<&'g str, VertexId>>,
}

impl<'g> VertexLookup<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let by_label = graph
            .labels()
            .map(|ls| ls.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect());
        VertexLookup { graph, by_label }
    }

    pub fn resolve(&self, token: &str) -> Result<VertexId> {
        let found = match &self.by_label {
            Some(map) => map.get(token).copied(),
            None => token.parse::<usize>().ok().filter(|&v| v < self.graph.vertex_count()),
        };
        found.ok_or_else(|| Error::UnknownVertex(token.to_string()))
    }
}

/// Query vertices separated by commas or whitespace; `#` lines are comments.
pub fn parse_query(g: &Graph, text: &str) -> Result<VertexSet> {
    let lookup = VertexLookup::new(g);
    let mut ids = Vec::new();
    for (_, toks) in token_lines(text) {
        for tok in toks.iter().flat_map(|t| t.split(',')).filter(|t| !t.is_empty()) {
            ids.push(lookup.resolve(tok)?);
        }
    }
    if ids.is_empty() {
        return Err(Error::EmptyQuery);
    }
    Ok(VertexSet::new(ids))
}

/// One vertex name per line.
pub fn write_query(g: &Graph, q: &VertexSet) -> String {
    q.iter().map(|v| g.name(v) + "\n").collect()
}

/// `vertex community` pairs; every vertex of `g` must appear exactly once.
pub fn parse_communities(g: &Graph, text: &str) -> Result<CommunityAssignment> {
    let lookup = VertexLookup::new(g);
    let mut raw: Vec<Option<usize>> = vec![None; g.vertex_count()];
    for (line, toks) in token_lines(text) {
        let [vertex, community] = toks[..] else {
            return Err(Error::Parse {
                line,
                message: format!("expected `vertex community`, found {} tokens", toks.len()),
            });
        };
        let v = lookup.resolve(vertex)?;
        let c = community.parse().map_err(|_| Error::Parse {
            line,
            message: format!("community id `{community}` is not a non-negative integer"),
        })?;
        if raw[v].replace(c).is_some() {
            return Err(Error::Parse {
                line,
                message: format!("vertex `{vertex}` assigned twice"),
            });
        }
    }
    let membership = raw
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| Error::Invalid(format!("vertex `{}` has no community", g.name(v)))))
        .collect::<Result<Vec<usize>>>()?;
    Ok(CommunityAssignment::new(membership))
}

pub fn write_communities(g: &Graph, c: &CommunityAssignment) -> String {
    (0..g.vertex_count())
        .map(|v| format!("{} {}\n", g.name(v), c.community_of(v)))
        .collect()
}

fn dot_id(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT rendering of `G[solution]`: query vertices blue, added vertices green.
pub fn to_dot(g: &Graph, query: &VertexSet, solution: &VertexSet) -> String {
    let mut out = String::from("graph solution {\n");
    for v in solution {
        let color = if query.contains(v) { "blue" } else { "green" };
        let _ = writeln!(out, "  {} [color={color}];", dot_id(&g.name(v)));
    }
    let sub = g.induced_subgraph(solution);
    for (u, v) in sub.graph.edges() {
        let (u, v) = (sub.to_parent(u), sub.to_parent(v));
        let _ = writeln!(out, "  {} -- {};", dot_id(&g.name(u)), dot_id(&g.name(v)));
    }
    out.push_str("}\n");
    out
}
