//! Batch experiments over planted-partition graphs.
//!
//! A config is flat `key = value` text. List-valued keys take comma-separated
//! values and span a grid; every grid point is repeated `reps` times.
//!
//! ```text
//! # graph
//! communities = 10
//! size = 20
//! p_in = 0.3, 0.6
//! p_out = 0.0, 0.01
//! # query grid
//! n = 5, 10
//! m = 0, 3
//! k = 1, 3
//! reps = 10
//! seed = 42
//! cap = 20
//! ```

use std::cmp::Ordering;
use std::collections::HashMap;
use std::io::Write;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::connectors::{cost_cmp, exhaustive_relax, greedy_relax, mwc_connector, DEFAULT_EXHAUSTIVE_CAP};
use crate::error::{Error, Result};
use crate::metrics;
use crate::querygen::{generate_query, planted_partition, QueryParams};
use crate::report::{solution_stats_with, write_batch_csv, GraphCentrality, SolutionReport};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchConfig {
    pub communities: usize,
    pub size: usize,
    pub p_in: Vec<f64>,
    pub p_out: Vec<f64>,
    pub n: Vec<usize>,
    pub m: Vec<usize>,
    pub k: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    /// Largest `|seed ∖ Q|` for which the exhaustive comparison runs.
    pub cap: usize,
    pub compare: bool,
}

const KEYS: [&str; 11] = [
    "communities", "size", "p_in", "p_out", "n", "m", "k", "reps", "seed", "cap", "compare",
];

fn parse_list<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<Vec<T>> {
    let items: Vec<&str> = value.split(',').map(str::trim).collect();
    if items.iter().any(|s| s.is_empty()) {
        return Err(Error::Parse {
            line,
            message: format!("`{key}` has an empty list item"),
        });
    }
    items
        .iter()
        .map(|s| {
            s.parse().map_err(|_| Error::Parse {
                line,
                message: format!("`{key}`: cannot parse `{s}`"),
            })
        })
        .collect()
}

impl BenchConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: HashMap<&str, (&str, usize)> = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') || line.starts_with('[') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(Error::Parse {
                line: i + 1,
                message: "expected `key = value`".into(),
            })?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("unknown key `{key}`"),
                });
            }
            if entries.insert(key, (value.trim(), i + 1)).is_some() {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("`{key}` given twice"),
                });
            }
        }
        let list = |key: &str| -> Result<(&str, usize)> {
            entries.get(key).copied().ok_or(Error::Parse {
                line: 0,
                message: format!("missing key `{key}`"),
            })
        };
        fn scalar<T: std::str::FromStr>(entries: &HashMap<&str, (&str, usize)>, key: &str, default: T) -> Result<T> {
            match entries.get(key) {
                Some(&(v, line)) => v.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("`{key}`: cannot parse `{v}`"),
                }),
                None => Ok(default),
            }
        }

        let (v, l) = list("p_in")?;
        let p_in = parse_list("p_in", v, l)?;
        let (v, l) = list("p_out")?;
        let p_out = parse_list("p_out", v, l)?;
        let (v, l) = list("n")?;
        let n = parse_list("n", v, l)?;
        let (v, l) = list("m")?;
        let m = parse_list("m", v, l)?;
        let k = match entries.get("k") {
            Some(&(v, l)) => parse_list("k", v, l)?,
            None => vec![1],
        };
        let config = BenchConfig {
            communities: scalar(&entries, "communities", 10)?,
            size: scalar(&entries, "size", 20)?,
            p_in,
            p_out,
            n,
            m,
            k,
            reps: scalar(&entries, "reps", 10)?,
            seed: scalar(&entries, "seed", 0)?,
            cap: scalar(&entries, "cap", DEFAULT_EXHAUSTIVE_CAP)?,
            compare: scalar(&entries, "compare", true)?,
        };
        if config.communities == 0 || config.size == 0 {
            return Err(Error::Invalid("communities and size must be positive".into()));
        }
        Ok(config)
    }

    /// Valid grid points in nested order `p_in, p_out, n, m, k`. Points with
    /// `p_out > p_in`, invalid query shapes, or (when `m = 0`) a `k` other than
    /// the first listed are skipped.
    pub fn grid(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for &p_in in &self.p_in {
            for &p_out in &self.p_out {
                if !(0.0..=1.0).contains(&p_in) || !(0.0..=p_in).contains(&p_out) {
                    continue;
                }
                for &n in &self.n {
                    for &m in &self.m {
                        for (ki, &k) in self.k.iter().enumerate() {
                            if m == 0 && ki > 0 {
                                continue;
                            }
                            let k = if m == 0 { 0 } else { k };
                            let q = QueryParams { n, m, k, seed: 0 };
                            if q.validate().is_err() {
                                continue;
                            }
                            out.push(GridPoint { p_in, p_out, n, m, k });
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub p_in: f64,
    pub p_out: f64,
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

/// Greedy outcome relative to exhaustive search over the same seed set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bucket {
    Equal,
    GreedyBetter,
    GreedyWorse,
    /// Not compared: disabled, or the seed exceeded the cap.
    Skipped,
}

impl Bucket {
    pub fn as_str(&self) -> &'static str {
        match self {
            Bucket::Equal => "equal",
            Bucket::GreedyBetter => "greedy_better",
            Bucket::GreedyWorse => "greedy_worse",
            Bucket::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRun {
    pub run: usize,
    pub point: GridPoint,
    pub rep: usize,
    pub graph_seed: u64,
    pub query_seed: u64,
    pub query_size: usize,
    pub seed_size: usize,
    pub exhaustive_inefficiency: Option<f64>,
    pub bucket: Bucket,
    pub report: SolutionReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BucketSummary {
    pub compared: usize,
    pub skipped: usize,
    pub equal: f64,
    pub greedy_better: f64,
    pub greedy_worse: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchOutcome {
    pub runs: Vec<BenchRun>,
    /// Grid points whose query could not be generated.
    pub infeasible: Vec<GridPoint>,
}

/// Seeds for run `index`: stream `index` of a generator keyed by `master`.
pub fn run_seeds(master: u64, index: usize) -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index as u64);
    (rng.next_u64(), rng.next_u64())
}

fn run_one(cfg: &BenchConfig, index: usize, point: GridPoint, rep: usize, timings: bool) -> Result<BenchRun> {
    let (graph_seed, query_seed) = run_seeds(cfg.seed, index);
    let (g, c) = planted_partition(cfg.communities, cfg.size, point.p_in, point.p_out, graph_seed)?;
    let params = QueryParams {
        n: point.n,
        m: point.m,
        k: point.k,
        seed: query_seed,
    };
    let q = generate_query(&g, &c, &params)?;

    let start = Instant::now();
    let seed = mwc_connector(&g, &q)?;
    let (solution, _) = greedy_relax(&g, &seed, &q)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;

    let mut report = solution_stats_with(&g, &GraphCentrality::new(&g), &q, &solution)?;
    if timings {
        report.runtime_ms = Some(elapsed);
    }

    let free = seed.len() - q.len();
    let (exhaustive_inefficiency, bucket) = if cfg.compare && free <= cfg.cap {
        let best = exhaustive_relax(&g, &seed, &q, cfg.cap)?;
        let cost = metrics::inefficiency(&g.induced_subgraph(&best).graph);
        let bucket = match cost_cmp(report.inefficiency, cost) {
            Ordering::Equal => Bucket::Equal,
            Ordering::Less => Bucket::GreedyBetter,
            Ordering::Greater => Bucket::GreedyWorse,
        };
        (Some(cost), bucket)
    } else {
        (None, Bucket::Skipped)
    };

    Ok(BenchRun {
        run: index,
        point,
        rep,
        graph_seed,
        query_seed,
        query_size: q.len(),
        seed_size: seed.len(),
        exhaustive_inefficiency,
        bucket,
        report,
    })
}

/// Runs the grid. Runs execute in parallel; results are ordered by run index.
/// A grid point whose query parameters are infeasible for the generated
/// communities is dropped entirely and listed in `infeasible`.
pub fn run_bench(cfg: &BenchConfig, timings: bool) -> Result<BenchOutcome> {
    let jobs: Vec<(usize, GridPoint, usize)> = cfg
        .grid()
        .into_iter()
        .flat_map(|p| (0..cfg.reps).map(move |r| (p, r)))
        .enumerate()
        .map(|(i, (p, r))| (i, p, r))
        .collect();
    let results: Vec<Result<BenchRun>> = jobs
        .par_iter()
        .map(|&(i, p, r)| run_one(cfg, i, p, r, timings))
        .collect();

    let mut runs = Vec::new();
    let mut infeasible: Vec<GridPoint> = Vec::new();
    for ((_, p, _), result) in jobs.iter().zip(results) {
        match result {
            Ok(run) => runs.push(run),
            Err(Error::Infeasible(_)) => {
                if infeasible.last() != Some(p) {
                    infeasible.push(*p);
                }
            }
            Err(e) => return Err(e),
        }
    }
    runs.retain(|r| !infeasible.contains(&r.point));
    Ok(BenchOutcome { runs, infeasible })
}

pub fn summarize(runs: &[BenchRun]) -> BucketSummary {
    let count = |b: Bucket| runs.iter().filter(|r| r.bucket == b).count();
    let compared = runs.len() - count(Bucket::Skipped);
    let frac = |b: Bucket| {
        if compared == 0 {
            0.0
        } else {
            count(b) as f64 / compared as f64
        }
    };
    BucketSummary {
        compared,
        skipped: count(Bucket::Skipped),
        equal: frac(Bucket::Equal),
        greedy_better: frac(Bucket::GreedyBetter),
        greedy_worse: frac(Bucket::GreedyWorse),
    }
}

pub const RUN_COLUMNS: [&str; 12] = [
    "run",
    "p_in",
    "p_out",
    "n",
    "m",
    "k",
    "rep",
    "graph_seed",
    "query_seed",
    "seed_size",
    "exhaustive_inefficiency",
    "bucket",
];

pub fn write_runs_csv<W: Write>(out: W, runs: &[BenchRun]) -> Result<()> {
    let rows: Vec<(Vec<String>, SolutionReport)> = runs
        .iter()
        .map(|r| {
            let keys = vec![
                r.run.to_string(),
                r.point.p_in.to_string(),
                r.point.p_out.to_string(),
                r.point.n.to_string(),
                r.point.m.to_string(),
                r.point.k.to_string(),
                r.rep.to_string(),
                r.graph_seed.to_string(),
                r.query_seed.to_string(),
                r.seed_size.to_string(),
                r.exhaustive_inefficiency.map(|c| c.to_string()).unwrap_or_default(),
                r.bucket.as_str().to_string(),
            ];
            (keys, r.report.clone())
        })
        .collect();
    write_batch_csv(out, &RUN_COLUMNS, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "communities = 4\nsize = 8\np_in = 0.7\np_out = 0.0\nn = 5\nm = 2\nk = 2\nreps = 10\nseed = 9\n";

    #[test]
    fn parses_config() {
        let cfg = BenchConfig::parse("[graph]\n# c\np_in = 0.3, 0.5\np_out = 0.0\nn = 5\nm = 0, 3\nk = 1, 3\n").unwrap();
        assert_eq!(cfg.p_in, vec![0.3, 0.5]);
        assert_eq!(cfg.cap, DEFAULT_EXHAUSTIVE_CAP);
        // m = 0 keeps one k; m = 3 keeps both
        assert_eq!(cfg.grid().len(), 2 * 3);
    }

    #[test]
    fn rejects_malformed_config() {
        assert!(BenchConfig::parse("p_in 0.3\n").is_err());
        assert!(BenchConfig::parse("p_in = 0.3\np_out = 0\nn = 5\n").is_err());
        assert!(BenchConfig::parse("p_in = 0.3\np_out = 0\nn = 5\nm = 1\nbogus = 1\n").is_err());
        assert!(BenchConfig::parse("p_in = x\np_out = 0\nn = 5\nm = 1\n").is_err());
        assert!(BenchConfig::parse("p_in = 0.3\np_out = 0\nn = 5\nm = 1\nreps = -1\n").is_err());
    }

    #[test]
    fn skips_invalid_grid_points() {
        let cfg = BenchConfig::parse("p_in = 0.1, 0.5\np_out = 0.2\nn = 0, 3\nm = 0, 2\nk = 1, 3\n").unwrap();
        let grid = cfg.grid();
        assert!(grid.iter().all(|p| p.p_out <= p.p_in));
        assert!(grid.iter().all(|p| p.n + p.m >= 1 && (p.m == 0 || p.k <= p.m)));
        // p_in 0.5 only; (n, m) in {(0,2),(3,0),(3,2)} with k = 1 for m = 2
        assert_eq!(grid.len(), 3);
    }

    #[test]
    fn runs_rows_and_buckets() {
        let cfg = BenchConfig::parse(SMALL).unwrap();
        let out = run_bench(&cfg, false).unwrap();
        assert_eq!(out.runs.len(), 10);
        let s = summarize(&out.runs);
        assert!((s.equal + s.greedy_better + s.greedy_worse - 1.0).abs() < 1e-12);
        assert_eq!(s.greedy_better, 0.0);
        let mut a = Vec::new();
        write_runs_csv(&mut a, &out.runs).unwrap();
        let text = String::from_utf8(a.clone()).unwrap();
        assert_eq!(text.lines().count(), 1 + 10 + 1);

        let again = run_bench(&cfg, false).unwrap();
        let mut b = Vec::new();
        write_runs_csv(&mut b, &again.runs).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn infeasible_points_are_listed() {
        let cfg = BenchConfig::parse("communities = 2\nsize = 3\np_in = 1\np_out = 0\nn = 2, 5\nm = 0\nreps = 2\n").unwrap();
        let out = run_bench(&cfg, false).unwrap();
        assert_eq!(out.runs.len(), 2);
        assert_eq!(out.infeasible.len(), 1);
        assert_eq!(out.infeasible[0].n, 5);
    }

    #[test]
    fn seeds_differ_per_run() {
        assert_ne!(run_seeds(1, 0), run_seeds(1, 1));
        assert_eq!(run_seeds(1, 5), run_seeds(1, 5));
        assert_ne!(run_seeds(1, 0), run_seeds(2, 0));
    }
}
