use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use mis_core::bench::{run_bench, summarize, write_runs_csv, BenchConfig};
use mis_core::connectors::{
    brute_force_mis, exhaustive_relax, gra_ctp, gra_mis, mwc_connector, RelaxTrace,
    DEFAULT_BRUTE_FORCE_CAP, DEFAULT_EXHAUSTIVE_CAP,
};
use mis_core::hardness::{reduce_3sat, verify_reduction, Cnf3Formula, ReductionInstance};
use mis_core::querygen::{generate_query, planted_partition, QueryParams};
use mis_core::report::solution_stats;
use mis_core::{io as formats, Error, Graph, VertexSet};

use crate::{Algo, BenchArgs, ConnectArgs, Format, PlantedArgs, QueryArgs, ReduceArgs, SampleArgs};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Undefined(_) => 1,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn input_failure(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_failure(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    let res = match path {
        Some(p) => fs::write(p, bytes),
        None => io::stdout().lock().write_all(bytes),
    };
    res.map_err(|e| Failure {
        code: 1,
        message: format!("write failed: {e}"),
    })
}

fn pretty<T: Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(value).expect("serializable");
    s.push(b'\n');
    s
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn name_value(g: &Graph, v: usize) -> Value {
    match g.labels() {
        Some(ls) => Value::from(ls[v].clone()),
        None => Value::from(v),
    }
}

fn names(g: &Graph, set: &VertexSet) -> Value {
    Value::Array(set.iter().map(|v| name_value(g, v)).collect())
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    formats::parse_edge_list(&read(path)?).map_err(|e| input_failure(format!("{}: {e}", path.display())))
}

fn sample_query(g: &Graph, s: &SampleArgs) -> Result<VertexSet, Failure> {
    let path = s
        .communities
        .as_ref()
        .ok_or_else(|| input_failure("either --query or --communities with --n is required".into()))?;
    let n = s
        .n
        .ok_or_else(|| input_failure("--communities requires --n".into()))?;
    let communities = formats::parse_communities(g, &read(path)?)?;
    let params = QueryParams {
        n,
        m: s.m,
        k: s.k.unwrap_or(if s.m > 0 { s.m } else { 0 }),
        seed: s.seed,
    };
    Ok(generate_query(g, &communities, &params)?)
}

pub fn connect(a: ConnectArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let q = match &a.query {
        Some(given) => {
            let path = Path::new(given);
            let text = if path.is_file() { read(path)? } else { given.clone() };
            formats::parse_query(&g, &text)?
        }
        None => sample_query(&g, &a.sample)?,
    };

    let start = Instant::now();
    let (solution, trace): (VertexSet, Option<RelaxTrace>) = match a.algo {
        Algo::GraMis => {
            let (s, t) = gra_mis(&g, &q)?;
            (s, Some(t))
        }
        Algo::CtpSeeded => {
            let (s, t) = gra_ctp(&g, &q)?;
            (s, Some(t))
        }
        Algo::Exhaustive => {
            let seed = mwc_connector(&g, &q)?;
            let cap = a.cap.unwrap_or(DEFAULT_EXHAUSTIVE_CAP);
            (exhaustive_relax(&g, &seed, &q, cap)?, None)
        }
        Algo::Brute => (brute_force_mis(&g, &q, a.cap.unwrap_or(DEFAULT_BRUTE_FORCE_CAP))?, None),
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;

    if a.format == Format::Dot {
        write_out(a.out.as_deref(), formats::to_dot(&g, &q, &solution).as_bytes())?;
        return Ok(0);
    }

    let mut report = solution_stats(&g, &q, &solution)?;
    if a.timings {
        report.runtime_ms = Some(elapsed);
    }
    let sub = g.induced_subgraph(&solution);
    let components: Vec<Value> = sub
        .graph
        .connected_components()
        .iter()
        .map(|c| names(&g, &sub.set_to_parent(c)))
        .collect();
    let doc = json!({
        "algorithm": a.algo.name(),
        "query": names(&g, &q),
        "solution": names(&g, &solution),
        "components": components,
        "report": report,
        "trace": if a.trace { serde_json::to_value(&trace).expect("serializable") } else { Value::Null },
    });
    write_out(a.out.as_deref(), &pretty(&doc))?;
    Ok(0)
}

pub fn query(a: QueryArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let q = sample_query(&g, &a.sample)?;
    write_out(a.out.as_deref(), formats::write_query(&g, &q).as_bytes())?;
    Ok(0)
}

pub fn planted(a: PlantedArgs) -> Outcome {
    let (g, c) = planted_partition(a.blocks, a.size, a.p_in, a.p_out, a.seed)?;
    write_out(Some(&with_suffix(&a.out, "edges")), formats::write_edge_list(&g).as_bytes())?;
    write_out(
        Some(&with_suffix(&a.out, "communities")),
        formats::write_communities(&g, &c).as_bytes(),
    )?;
    Ok(0)
}

pub fn bench(a: BenchArgs) -> Outcome {
    let config = BenchConfig::parse(&read(&a.config)?)?;
    let outcome = run_bench(&config, a.timings)?;
    for p in &outcome.infeasible {
        eprintln!(
            "skipped infeasible point p_in={} p_out={} n={} m={} k={}",
            p.p_in, p.p_out, p.n, p.m, p.k
        );
    }
    let mut csv = Vec::new();
    write_runs_csv(&mut csv, &outcome.runs)?;
    write_out(a.out.as_deref(), &csv)?;

    let summary = summarize(&outcome.runs);
    eprintln!(
        "greedy vs exhaustive over {} runs ({} skipped): equal {:.4}, greedy better {:.4}, greedy worse {:.4}",
        summary.compared, summary.skipped, summary.equal, summary.greedy_better, summary.greedy_worse
    );
    if let Some(path) = &a.summary {
        write_out(Some(path), &pretty(&summary))?;
    }
    Ok(0)
}

fn constants(inst: &ReductionInstance) -> Value {
    json!({
        "clause_count": inst.clause_count(),
        "variable_count": inst.formula.variable_count(),
        "block_size": inst.block_size,
        "b1": inst.b1,
        "b2": inst.b2,
        "threshold": inst.threshold(),
        "vertex_count": inst.graph.vertex_count(),
        "edge_count": inst.graph.edge_count(),
        "query_size": inst.query.len(),
        "clauses": inst.clauses,
    })
}

pub fn reduce(a: ReduceArgs) -> Outcome {
    let phi = Cnf3Formula::parse_dimacs(&read(&a.cnf)?)
        .map_err(|e| input_failure(format!("{}: {e}", a.cnf.display())))?;
    let inst = reduce_3sat(&phi, a.m_override)?;
    if !inst.uses_default_block_size() {
        eprintln!(
            "warning: M = {} instead of 6m² + 1 = {}; the threshold argument assumes the default",
            inst.block_size,
            ReductionInstance::default_block_size(inst.clause_count())
        );
    }
    let mut doc = constants(&inst);
    let mut code = 0;
    if a.verify {
        let report = verify_reduction(&phi, a.m_override)?;
        eprintln!(
            "verdict: {} (satisfiable: {}, min inefficiency {} vs threshold {})",
            if report.verdict { "TRUE" } else { "FALSE" },
            report.satisfiable,
            report.min_inefficiency,
            report.threshold
        );
        if !report.verdict {
            code = 1;
        }
        doc["verification"] = serde_json::to_value(&report).expect("serializable");
    }
    let edges = formats::write_edge_list(&inst.graph);
    let query = formats::write_query(&inst.graph, &inst.query);
    match &a.out {
        Some(prefix) => {
            write_out(Some(&with_suffix(prefix, "edges")), edges.as_bytes())?;
            write_out(Some(&with_suffix(prefix, "query")), query.as_bytes())?;
            write_out(Some(&with_suffix(prefix, "json")), &pretty(&doc))?;
        }
        None => {
            doc["edges"] = Value::from(edges);
            doc["query"] = Value::from(query);
            write_out(None, &pretty(&doc))?;
        }
    }
    Ok(code)
}
