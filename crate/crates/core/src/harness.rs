//! Sweeps: stream graphs from a source, run certifiers on each, write one
//! record per (graph, verdict) and aggregate minima and violations.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{evaluate, resolve_bound_names, BoundVerdict, VerdictStatus};
use crate::error::{Error, Result};
use crate::families::{build_family, FAMILY_NAMES};
use crate::graph::{enumerate_graphs, parse_graph6, write_graph6, Graph};
use crate::oracles::{check_property_double_star, check_property_star, MAX_ORACLE_N};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// Isomorphism classes on `n` vertices, or on `1..=n` when `cumulative`.
    Enumerate {
        n: usize,
        connected_only: bool,
        cumulative: bool,
    },
    Family { name: String, params: Vec<String> },
    File(PathBuf),
    Stdin,
    /// graph6 strings, one per line.
    Text(String),
}

impl Source {
    /// `-` is standard input, `enum:<n>` / `enum-all:<n>` enumerate
    /// connected / all graphs, `<family>:<p1>,<p2>` builds a family member,
    /// an existing path is a graph6 file, anything else a graph6 string.
    pub fn parse(spec: &str) -> Result<Source> {
        if spec == "-" {
            return Ok(Source::Stdin);
        }
        if let Some((head, tail)) = spec.split_once(':') {
            let enumerate = |connected_only| {
                let n = tail
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad vertex count in {spec:?}")))?;
                Ok(Source::Enumerate {
                    n,
                    connected_only,
                    cumulative: false,
                })
            };
            match head {
                "enum" => return enumerate(true),
                "enum-all" => return enumerate(false),
                _ if FAMILY_NAMES.contains(&head) => {
                    let params = if tail.is_empty() {
                        Vec::new()
                    } else {
                        tail.split(',').map(str::to_owned).collect()
                    };
                    return Ok(Source::Family {
                        name: head.to_owned(),
                        params,
                    });
                }
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown source prefix {head:?}; families: {}",
                        FAMILY_NAMES.join(", ")
                    )))
                }
            }
        }
        if FAMILY_NAMES.contains(&spec) {
            return Ok(Source::Family {
                name: spec.to_owned(),
                params: Vec::new(),
            });
        }
        if Path::new(spec).is_file() {
            return Ok(Source::File(spec.into()));
        }
        Ok(Source::Text(spec.to_owned()))
    }

    pub fn load(&self) -> Result<Vec<Graph>> {
        match self {
            Source::Enumerate {
                n,
                connected_only,
                cumulative,
            } => {
                let sizes = if *cumulative { 1..=*n } else { *n..=*n };
                let mut out = Vec::new();
                for k in sizes {
                    out.extend(enumerate_graphs(k, *connected_only)?);
                }
                Ok(out)
            }
            Source::Family { name, params } => {
                let refs: Vec<&str> = params.iter().map(String::as_str).collect();
                Ok(vec![build_family(name, &refs)?])
            }
            Source::File(path) => parse_graph6_lines(&fs::read_to_string(path)?),
            Source::Stdin => {
                let mut text = String::new();
                io::stdin().read_to_string(&mut text)?;
                parse_graph6_lines(&text)
            }
            Source::Text(text) => parse_graph6_lines(text),
        }
    }
}

/// One graph per non-blank line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    JsonLines,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" | "jsonl" | "json-lines" => Ok(OutputFormat::JsonLines),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::InvalidParameter(format!("unknown format {other:?}"))),
        }
    }
}

/// Certifiers that run an exponential-time oracle.
pub const EXPONENTIAL_BOUNDS: &[&str] = &["domination", "surplus", "conjectures"];

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub source: Source,
    pub bounds: Vec<String>,
    /// `None` writes records to standard output.
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub seed: u64,
    /// Worker threads; 0 uses all cores.
    pub jobs: usize,
    /// Largest `n` handed to the exponential oracles.
    pub budget_n: usize,
}

impl RunConfig {
    pub fn new(source: Source, bounds: Vec<String>) -> Self {
        RunConfig {
            source,
            bounds,
            output: None,
            format: OutputFormat::JsonLines,
            seed: 0,
            jobs: 0,
            budget_n: MAX_ORACLE_N,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictRecord {
    pub index: usize,
    /// Absent for graphs too large for graph6.
    pub graph6: Option<String>,
    pub n: usize,
    pub m: usize,
    #[serde(flatten)]
    pub verdict: BoundVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimumRecord {
    pub slack: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub index: usize,
    pub graph6: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    pub graphs_processed: usize,
    pub records: usize,
    pub violations: Vec<VerdictRecord>,
    pub errors: Vec<VerdictRecord>,
    /// Smallest slack per certifier over checked and informational verdicts.
    pub minima: BTreeMap<String, MinimumRecord>,
    pub wall_time: f64,
}

impl RunSummary {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-graph seed derived from the run seed and the stream position.
pub fn graph_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// All verdict records for one graph, in certifier order.
pub fn evaluate_graph(g: &Graph, index: usize, bounds: &[&'static str], seed: u64, budget_n: usize) -> Vec<VerdictRecord> {
    let graph6 = write_graph6(g).ok();
    let mut out = Vec::new();
    for &name in bounds {
        let verdicts = if g.n() > budget_n && EXPONENTIAL_BOUNDS.contains(&name) {
            let err = Error::Budget(format!("n = {} exceeds budget {budget_n}", g.n()));
            vec![BoundVerdict::error(name, &err)]
        } else {
            evaluate(name, g, graph_seed(seed, index)).unwrap_or_else(|err| vec![BoundVerdict::error(name, &err)])
        };
        out.extend(verdicts.into_iter().map(|verdict| VerdictRecord {
            index,
            graph6: graph6.clone(),
            n: g.n(),
            m: g.m(),
            verdict,
        }));
    }
    out
}

#[derive(Serialize)]
struct CsvRow<'a> {
    index: usize,
    graph6: &'a str,
    n: usize,
    m: usize,
    name: &'a str,
    status: VerdictStatus,
    lhs: f64,
    rhs: f64,
    slack: f64,
    holds: bool,
    witness: String,
    note: &'a str,
}

/// Writes records in the chosen format.
pub fn write_records<W: Write>(records: &[VerdictRecord], format: OutputFormat, mut sink: W) -> Result<()> {
    match format {
        OutputFormat::JsonLines => {
            for r in records {
                serde_json::to_writer(&mut sink, r)?;
                sink.write_all(b"\n")?;
            }
            sink.flush()?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            for r in records {
                let witness = match &r.verdict.witness {
                    Some(v) => serde_json::to_string(v)?,
                    None => String::new(),
                };
                w.serialize(CsvRow {
                    index: r.index,
                    graph6: r.graph6.as_deref().unwrap_or(""),
                    n: r.n,
                    m: r.m,
                    name: r.verdict.name,
                    status: r.verdict.status,
                    lhs: r.verdict.lhs,
                    rhs: r.verdict.rhs,
                    slack: r.verdict.slack,
                    holds: r.verdict.holds,
                    witness,
                    note: r.verdict.note.as_deref().unwrap_or(""),
                })?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Aggregates records produced from `graphs` inputs since `started`.
pub fn summarize(graphs: usize, records: &[VerdictRecord], started: Instant) -> RunSummary {
    let mut minima: BTreeMap<String, MinimumRecord> = BTreeMap::new();
    for r in records {
        let v = &r.verdict;
        if !matches!(v.status, VerdictStatus::Checked | VerdictStatus::Informational) {
            continue;
        }
        let better = minima.get(v.name).is_none_or(|cur| v.slack < cur.slack);
        if better {
            minima.insert(
                v.name.to_owned(),
                MinimumRecord {
                    slack: v.slack,
                    lhs: v.lhs,
                    rhs: v.rhs,
                    index: r.index,
                    graph6: r.graph6.clone(),
                },
            );
        }
    }
    RunSummary {
        graphs_processed: graphs,
        records: records.len(),
        violations: records.iter().filter(|r| r.verdict.is_violation()).cloned().collect(),
        errors: records
            .iter()
            .filter(|r| r.verdict.status == VerdictStatus::Error)
            .cloned()
            .collect(),
        minima,
        wall_time: started.elapsed().as_secs_f64(),
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Evaluates `bounds` on already-loaded graphs; records come back in stream
/// order regardless of `jobs`.
pub fn run_on_graphs(graphs: &[Graph], bounds: &[&'static str], seed: u64, jobs: usize, budget_n: usize) -> Result<Vec<VerdictRecord>> {
    with_pool(jobs, || {
        graphs
            .par_iter()
            .enumerate()
            .map(|(i, g)| evaluate_graph(g, i, bounds, seed, budget_n))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    })
}

/// Loads the source, runs the certifiers, writes records to the sink and
/// returns the summary. Violations and per-graph failures are reported,
/// never fatal.
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    let started = Instant::now();
    let bounds = resolve_bound_names(&config.bounds)?;
    let graphs = config.source.load()?;
    let records = run_on_graphs(&graphs, &bounds, config.seed, config.jobs, config.budget_n)?;
    match &config.output {
        Some(path) => write_records(&records, config.format, io::BufWriter::new(fs::File::create(path)?))?,
        None => write_records(&records, config.format, io::stdout().lock())?,
    }
    Ok(summarize(graphs.len(), &records, started))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FilterCounts {
    pub input: usize,
    pub disconnected: usize,
    pub failed_star: usize,
    pub failed_double_star: usize,
    pub survivors: usize,
}

/// Keeps the connected graphs satisfying properties (*) and (**), the
/// latter by a full subset scan.
pub fn filter_minimal_counterexample_candidates(graphs: Vec<Graph>) -> Result<(Vec<Graph>, FilterCounts)> {
    let mut counts = FilterCounts {
        input: graphs.len(),
        ..FilterCounts::default()
    };
    let mut survivors = Vec::new();
    for g in graphs {
        if !g.is_connected() {
            counts.disconnected += 1;
        } else if !check_property_star(&g)?.holds {
            counts.failed_star += 1;
        } else if !check_property_double_star(&g, g.n())?.holds {
            counts.failed_double_star += 1;
        } else {
            survivors.push(g);
        }
    }
    counts.survivors = survivors.len();
    Ok((survivors, counts))
}
