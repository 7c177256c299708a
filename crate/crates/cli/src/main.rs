use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use square_energy::bounds::resolve_bound_names;
use square_energy::decompose::{
    certify_superadditivity, degree_class_partition, domination_partition, star_clique_partition,
};
use square_energy::families::{gq_collinearity_graph, gq_predicted_spectrum, MAX_GQ_Q};
use square_energy::graph::{enumerate_graphs, write_graph6};
use square_energy::harness::{
    filter_minimal_counterexample_candidates, run, run_on_graphs, summarize, write_records, OutputFormat, RunConfig,
    RunSummary, Source,
};
use square_energy::oracles::{domination_number, MAX_ORACLE_N};
use square_energy::spectral::{default_zero_tolerance, inertia, spectrum, square_energies, tau_num};
use square_energy::Graph;

/// Square energies, bounds and certificates for small graphs.
///
/// SOURCE is `-` (graph6 on stdin), a graph6 file, a graph6 string,
/// `enum:<n>` / `enum-all:<n>`, or a family such as `c_k3:5`, `cycle:7`,
/// `gq:2`, `unicyclic_glue:path/4,5,0`.
///
/// Exit status: 0 clean, 2 violations found, 1 error.
#[derive(Parser)]
#[command(name = "sqe", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads, 0 for all cores.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// json (one record per line) or csv.
    #[arg(long, global = true, default_value = "json", value_parser = parse_format)]
    format: OutputFormat,
    /// Output file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest n handed to exponential oracles.
    #[arg(long = "budget-n", global = true, default_value_t = MAX_ORACLE_N)]
    budget_n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Adjacency spectrum and inertia.
    Spectrum { source: String },
    /// s⁺, s⁻ and energy.
    Energy { source: String },
    /// Run certifiers on every graph of a source.
    Bounds {
        /// Comma separated certifier names, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        set: Vec<String>,
        source: String,
    },
    /// graph6 of every graph on n vertices up to isomorphism.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected: bool,
    },
    /// Vertex partition plus the superadditivity comparison.
    Decompose {
        #[arg(long, value_enum)]
        method: Method,
        source: String,
    },
    /// Elliptic quadric collinearity graph against its predicted spectrum.
    Gq {
        #[arg(long)]
        q: u64,
    },
    /// Certifiers over all connected graphs on 1..=n vertices.
    Verify {
        #[arg(long, value_delimiter = ',', default_value = "efgw")]
        conjecture: Vec<String>,
        #[arg(long)]
        n: usize,
    },
    /// Minimal counterexample candidates among connected graphs on n
    /// vertices; survivors are checked against efgw.
    Hunt {
        #[arg(long, value_enum, default_value = "minimal-candidates")]
        filter: Filter,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    StarClique,
    Domination,
    DegreeClass,
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    MinimalCandidates,
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    s.parse().map_err(|e: square_energy::Error| e.to_string())
}

type Row = Vec<(&'static str, Value)>;

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_rows(rows: &[Row], format: OutputFormat, mut w: Box<dyn Write>) -> Result<()> {
    match format {
        OutputFormat::JsonLines => {
            for row in rows {
                let fields: Vec<String> = row
                    .iter()
                    .map(|(k, v)| format!("{}:{}", Value::from(*k), v))
                    .collect();
                writeln!(w, "{{{}}}", fields.join(","))?;
            }
        }
        OutputFormat::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            if let Some(first) = rows.first() {
                csv.write_record(first.iter().map(|(k, _)| *k))?;
            }
            for row in rows {
                csv.write_record(row.iter().map(|(_, v)| match v {
                    Value::Null => String::new(),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                }))?;
            }
            csv.flush()?;
        }
    }
    w.flush()?;
    Ok(())
}

fn head(index: usize, g: &Graph) -> Row {
    vec![
        ("index", json!(index)),
        ("graph6", json!(write_graph6(g).ok())),
        ("n", json!(g.n())),
        ("m", json!(g.m())),
    ]
}

fn load(source: &str) -> Result<Vec<Graph>> {
    let src = Source::parse(source)?;
    src.load().with_context(|| format!("loading {source:?}"))
}

fn cmd_spectrum(source: &str, g: &Global) -> Result<bool> {
    let mut rows = Vec::new();
    for (i, graph) in load(source)?.iter().enumerate() {
        let s = spectrum(graph)?;
        let inr = inertia(&s, default_zero_tolerance(graph.n()).max(s.residual_bound))?;
        let mut row = head(i, graph);
        row.extend([
            ("eigenvalues", json!(s.values)),
            ("residual_bound", json!(s.residual_bound)),
            ("n_plus", json!(inr.n_plus)),
            ("n_zero", json!(inr.n_zero)),
            ("n_minus", json!(inr.n_minus)),
        ]);
        rows.push(row);
    }
    write_rows(&rows, g.format, sink(&g.out)?)?;
    Ok(true)
}

fn cmd_energy(source: &str, g: &Global) -> Result<bool> {
    let mut rows = Vec::new();
    for (i, graph) in load(source)?.iter().enumerate() {
        let e = square_energies(graph)?;
        let mut row = head(i, graph);
        row.extend([
            ("s_plus", json!(e.s_plus)),
            ("s_minus", json!(e.s_minus)),
            ("energy", json!(e.energy)),
            ("min_square_energy", json!(e.min_square_energy())),
        ]);
        rows.push(row);
    }
    write_rows(&rows, g.format, sink(&g.out)?)?;
    Ok(true)
}

fn report(summary: &RunSummary) {
    eprintln!(
        "graphs {}  records {}  violations {}  errors {}  wall {:.3}s",
        summary.graphs_processed,
        summary.records,
        summary.violations.len(),
        summary.errors.len(),
        summary.wall_time
    );
    for (name, min) in &summary.minima {
        eprintln!(
            "  {name:<18} min slack {:>12.6}  lhs {:.6}  rhs {:.6}  #{} {}",
            min.slack,
            min.lhs,
            min.rhs,
            min.index,
            min.graph6.as_deref().unwrap_or("-")
        );
    }
    for v in &summary.violations {
        eprintln!(
            "  VIOLATION {} on #{} {}: lhs {} rhs {}",
            v.verdict.name,
            v.index,
            v.graph6.as_deref().unwrap_or("-"),
            v.verdict.lhs,
            v.verdict.rhs
        );
    }
    for e in &summary.errors {
        eprintln!(
            "  error {} on #{}: {}",
            e.verdict.name,
            e.index,
            e.verdict.note.as_deref().unwrap_or("")
        );
    }
}

fn sweep(source: Source, bounds: Vec<String>, g: &Global) -> Result<bool> {
    let config = RunConfig {
        source,
        bounds,
        output: g.out.clone(),
        format: g.format,
        seed: g.seed,
        jobs: g.jobs,
        budget_n: g.budget_n,
    };
    let summary = run(&config)?;
    report(&summary);
    Ok(summary.is_clean())
}

fn cmd_decompose(source: &str, method: Method, g: &Global) -> Result<bool> {
    let mut rows = Vec::new();
    let mut clean = true;
    for (i, graph) in load(source)?.iter().enumerate() {
        let (name, p) = match method {
            Method::StarClique => ("star-clique", star_clique_partition(graph)?),
            Method::Domination => {
                if graph.n() > g.budget_n {
                    bail!("graph #{i}: n = {} exceeds --budget-n {}", graph.n(), g.budget_n);
                }
                ("domination", domination_partition(graph, &domination_number(graph)?)?)
            }
            Method::DegreeClass => ("degree-class", degree_class_partition(graph)?),
        };
        let r = certify_superadditivity(graph, &p)?;
        clean &= !r.violation;
        let mut row = head(i, graph);
        row.extend([
            ("method", json!(name)),
            ("parts", json!(p.to_lists())),
            ("labels", json!(p.labels)),
            ("s_plus", json!(r.s_plus)),
            ("s_minus", json!(r.s_minus)),
            ("parts_s_plus", json!(r.parts_s_plus)),
            ("parts_s_minus", json!(r.parts_s_minus)),
            ("slack_plus", json!(r.slack_plus)),
            ("slack_minus", json!(r.slack_minus)),
            ("violation", json!(r.violation)),
        ]);
        rows.push(row);
    }
    write_rows(&rows, g.format, sink(&g.out)?)?;
    Ok(clean)
}

fn cmd_gq(q: u64, g: &Global) -> Result<bool> {
    let p = gq_predicted_spectrum(q)?;
    let mut row: Row = vec![
        ("q", json!(q)),
        ("n_pred", json!(p.n_pred)),
        ("m_pred", json!(p.m_pred)),
        ("k", json!(p.k)),
        ("r", json!(p.r)),
        ("f", json!(p.f)),
        ("a", json!(p.a)),
        ("g", json!(p.g)),
        ("s_plus_pred", json!(p.s_plus())),
        ("s_minus_pred", json!(p.s_minus())),
    ];
    let mut clean = true;
    if q <= MAX_GQ_Q {
        let graph = gq_collinearity_graph(q)?;
        let s = spectrum(&graph)?;
        let e = square_energies(&graph)?;
        let predicted = p.eigenvalues();
        let deviation = if predicted.len() == s.len() {
            predicted
                .iter()
                .zip(&s.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        let matches = deviation <= tau_num(graph.n())
            && (e.s_plus - p.s_plus() as f64).abs() <= 1e-6
            && (e.s_minus - p.s_minus() as f64).abs() <= 1e-6;
        clean = matches;
        row.extend([
            ("n", json!(graph.n())),
            ("m", json!(graph.m())),
            ("s_plus", json!(e.s_plus)),
            ("s_minus", json!(e.s_minus)),
            ("max_eigenvalue_deviation", json!(deviation)),
            ("matches", json!(matches)),
        ]);
    } else {
        eprintln!("q = {q} > {MAX_GQ_Q}: predicted parameters only");
    }
    write_rows(&[row], g.format, sink(&g.out)?)?;
    Ok(clean)
}

fn cmd_hunt(n: usize, g: &Global) -> Result<bool> {
    if n > g.budget_n {
        bail!("n = {n} exceeds --budget-n {}", g.budget_n);
    }
    let started = Instant::now();
    let (survivors, counts) = filter_minimal_counterexample_candidates(enumerate_graphs(n, true)?)?;
    eprintln!("{}", serde_json::to_string(&counts)?);
    let bounds = resolve_bound_names(&["efgw".to_owned()])?;
    let records = run_on_graphs(&survivors, &bounds, g.seed, g.jobs, g.budget_n)?;
    write_records(&records, g.format, sink(&g.out)?)?;
    let summary = summarize(survivors.len(), &records, started);
    report(&summary);
    Ok(summary.is_clean())
}

fn dispatch(cli: Cli) -> Result<bool> {
    let g = &cli.global;
    match cli.command {
        Command::Spectrum { source } => cmd_spectrum(&source, g),
        Command::Energy { source } => cmd_energy(&source, g),
        Command::Bounds { set, source } => sweep(Source::parse(&source)?, set, g),
        Command::Enumerate { n, connected } => {
            let mut w = sink(&g.out)?;
            for graph in enumerate_graphs(n, connected)? {
                writeln!(w, "{}", write_graph6(&graph)?)?;
            }
            w.flush()?;
            Ok(true)
        }
        Command::Decompose { method, source } => cmd_decompose(&source, method, g),
        Command::Gq { q } => cmd_gq(q, g),
        Command::Verify { conjecture, n } => {
            let source = Source::Enumerate {
                n,
                connected_only: true,
                cumulative: true,
            };
            sweep(source, conjecture, g)
        }
        Command::Hunt {
            filter: Filter::MinimalCandidates,
            n,
        } => cmd_hunt(n, g),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(err) => {
            eprintln!("sqe: {err:#}");
            ExitCode::from(1)
        }
    }
}
