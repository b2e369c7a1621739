//! Command-line front end for the maintenance engine: generate instances,
//! replay update traces, verify certificates against the oracle, and run
//! the scaling benchmarks.
//!
//! Exit codes: 0 success, 1 invariant/verification failure, 2 input error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kconn::certificate::SparseCertificate;
use kconn::gen;
use kconn::graph::Graph;
use kconn::io;
use kconn::maintainer::{Maintainer, ReplayError};
use kconn::oracle;

#[derive(Parser)]
#[command(
    name = "kconn",
    version,
    about = "Maintain λ(G) ≥ k under edge updates"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply a trace of edge updates to a graph, enforcing λ(G) ≥ k.
    Replay(ReplayArgs),
    /// Run the oracle invariant suite against a graph and its certificate.
    Verify(VerifyArgs),
    /// Generate a Harary graph and a valid random trace for it.
    Gen(GenArgs),
    /// Measure per-addition forest work and deletion wall times.
    Bench(BenchArgs),
}

#[derive(Args)]
struct ReplayArgs {
    /// Graph file (`n m k` header, then `u v` lines).
    #[arg(long)]
    graph: PathBuf,
    /// Trace file (`a u v` / `d u v` lines).
    #[arg(long)]
    trace: PathBuf,
    /// Required connectivity; defaults to the k in the graph header.
    #[arg(long)]
    k: Option<usize>,
    /// Run the oracle check every N commands (0 disables).
    #[arg(long, default_value_t = 10)]
    check_every: usize,
    /// Route deletion flow checks through a fresh sparse certificate.
    #[arg(long)]
    sparsify: bool,
    /// Write the run report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Export the final certificate to this path.
    #[arg(long)]
    cert: Option<PathBuf>,
    /// Export the post-trace graph to this path (the input for `verify`).
    #[arg(long)]
    graph_out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Certificate export to verify; freshly built when omitted.
    #[arg(long)]
    cert: Option<PathBuf>,
    /// Required connectivity; defaults to the k in the graph header.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    /// Vertex count (must be at least k + 1).
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of trace commands.
    #[arg(long, default_value_t = 200)]
    ops: usize,
    /// Probability that a trace command is an addition.
    #[arg(long, default_value_t = 0.6)]
    p_add: f64,
    /// Output path for the graph file.
    #[arg(long)]
    graph: PathBuf,
    /// Output path for the trace file.
    #[arg(long)]
    trace: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Vertex counts for the addition benchmark, comma-separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1024usize, 4096, 16384, 65536])]
    sizes: Vec<usize>,
    /// Additions measured per size.
    #[arg(long, default_value_t = 10_000)]
    adds: usize,
    /// Vertex count for the deletion benchmark.
    #[arg(long, default_value_t = 10_000)]
    deletion_n: usize,
    /// Edge count for the deletion benchmark.
    #[arg(long, default_value_t = 500_000)]
    deletion_m: usize,
    /// Write the timing report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Marker for failures that must exit with code 1 rather than 2.
#[derive(Debug)]
struct Violation(String);

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for Violation {}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Replay(args) => cmd_replay(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.is::<Violation>() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, content).with_context(|| format!("writing {}", p.display()))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn load_graph(path: &Path, k_flag: Option<usize>) -> Result<(Graph, usize)> {
    let (graph, file_k) = io::parse_graph(&read_to_string(path)?)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok((graph, k_flag.unwrap_or(file_k)))
}

fn cmd_replay(args: ReplayArgs) -> Result<()> {
    let (graph, k) = load_graph(&args.graph, args.k)?;
    let trace = io::parse_trace(&read_to_string(&args.trace)?)
        .with_context(|| format!("parsing {}", args.trace.display()))?;
    let mut maintainer = Maintainer::with_options(graph, k, args.sparsify)?;
    match maintainer.replay(&trace, args.check_every) {
        Ok(report) => {
            write_output(args.out.as_deref(), &report.to_string())?;
            if let Some(cert_path) = &args.cert {
                std::fs::write(cert_path, io::write_certificate(maintainer.certificate()))
                    .with_context(|| format!("writing {}", cert_path.display()))?;
            }
            if let Some(graph_path) = &args.graph_out {
                std::fs::write(graph_path, io::write_graph(maintainer.graph(), k))
                    .with_context(|| format!("writing {}", graph_path.display()))?;
            }
            Ok(())
        }
        Err(err @ ReplayError::InvalidCommand { .. }) => Err(err.into()),
        Err(err @ ReplayError::InvariantViolation { .. }) => Err(Violation(err.to_string()).into()),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<()> {
    let (graph, k) = load_graph(&args.graph, args.k)?;
    let n = graph.vertex_count();
    if n > 50 {
        bail!("verify is oracle-driven and limited to 50 vertices, graph has {n}");
    }
    if k == 0 {
        bail!("k must be at least 1");
    }

    let levels: Vec<Vec<(usize, usize)>> = match &args.cert {
        Some(path) => io::parse_certificate(&read_to_string(path)?)
            .with_context(|| format!("parsing {}", path.display()))?,
        None => {
            let cert = SparseCertificate::new(&graph, k)?;
            (1..=k)
                .map(|lv| {
                    cert.level_edges(lv)
                        .expect("level in range")
                        .iter()
                        .map(|e| e.endpoints())
                        .collect()
                })
                .collect()
        }
    };

    let mut failures = Vec::new();
    check_certificate_structure(&graph, k, &levels, &mut failures);
    check_lemma_per_level(&graph, &levels, &mut failures);
    match oracle::is_k_edge_connected(&graph, k) {
        Ok(true) => {}
        Ok(false) => failures.push(format!("global: oracle λ(G) < {k}")),
        Err(e) => failures.push(format!("global: {e}")),
    }

    if failures.is_empty() {
        println!("verify: ok ({} levels, n = {n}, k = {k})", levels.len());
        Ok(())
    } else {
        let mut msg = String::from("verification failed:\n");
        for f in &failures {
            let _ = writeln!(msg, "  {f}");
        }
        Err(Violation(msg).into())
    }
}

/// Structural checks on an exported certificate: levels are edge-disjoint
/// acyclic subgraphs of G within the size bound.
fn check_certificate_structure(
    graph: &Graph,
    k: usize,
    levels: &[Vec<(usize, usize)>],
    failures: &mut Vec<String>,
) {
    if levels.len() != k {
        failures.push(format!(
            "certificate has {} levels, expected {k}",
            levels.len()
        ));
    }
    let mut seen = std::collections::HashSet::new();
    let mut total = 0;
    for (idx, level) in levels.iter().enumerate() {
        let mut parent: Vec<usize> = (0..graph.vertex_count()).collect();
        for &(u, v) in level {
            total += 1;
            if !graph.has_edge(u, v) {
                failures.push(format!(
                    "level {}: {{{u},{v}}} is not a graph edge",
                    idx + 1
                ));
                continue;
            }
            if !seen.insert((u.min(v), u.max(v))) {
                failures.push(format!("level {}: {{{u},{v}}} appears twice", idx + 1));
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                failures.push(format!("level {}: cycle closed at {{{u},{v}}}", idx + 1));
            } else {
                parent[ru] = rv;
            }
        }
    }
    let bound = k * graph.vertex_count().saturating_sub(1);
    if total > bound {
        failures.push(format!("certificate size {total} exceeds k(n-1) = {bound}"));
    }
}

fn find(parent: &mut Vec<usize>, v: usize) -> usize {
    if parent[v] != v {
        let root = find(parent, parent[v]);
        parent[v] = root;
    }
    parent[v]
}

/// For every vertex pair and level prefix G_i, the certificate must give
/// λ(x, y; G_i) ≥ min(λ(x, y; G), i).
fn check_lemma_per_level(
    graph: &Graph,
    levels: &[Vec<(usize, usize)>],
    failures: &mut Vec<String>,
) {
    let n = graph.vertex_count();
    let mut prefix = Graph::new(n);
    for (idx, level) in levels.iter().enumerate() {
        let i = idx + 1;
        for &(u, v) in level {
            if u < n && v < n && u != v && !prefix.has_edge(u, v) {
                prefix.add_edge(u, v).expect("validated");
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                let full = oracle::local_connectivity(graph, x, y).expect("x != y");
                let needed = full.min(i);
                let ok =
                    oracle::local_connectivity_at_least(&prefix, x, y, needed).expect("x != y");
                if !ok {
                    failures.push(format!(
                        "level {i}: λ({x},{y}; G_{i}) < min(λ({x},{y}; G), {i}) = {needed}"
                    ));
                }
            }
        }
    }
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let graph = gen::harary(args.k, args.n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let trace = gen::random_trace(&graph, args.k, args.ops, args.p_add, &mut rng)?;
    std::fs::write(&args.graph, io::write_graph(&graph, args.k))
        .with_context(|| format!("writing {}", args.graph.display()))?;
    std::fs::write(&args.trace, io::write_trace(&trace))
        .with_context(|| format!("writing {}", args.trace.display()))?;
    println!(
        "gen: H_{{{},{}}} with {} edges, {} commands",
        args.k,
        args.n,
        graph.edge_count(),
        trace.len()
    );
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let k = args.k;
    let mut report = String::new();
    let _ = writeln!(
        report,
        "additions: k = {k}, {} random adds per size",
        args.adds
    );
    let _ = writeln!(
        report,
        "{:>8} {:>8} {:>14} {:>12} {:>10}",
        "n", "adds", "rotations/add", "c (k*log2n)", "ms"
    );
    for &n in &args.sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let graph = gen::harary(k, n)?;
        let mut maintainer = Maintainer::new(graph, k)?;
        let start_rot = maintainer.certificate().rotation_count();
        let started = Instant::now();
        let mut done = 0;
        'adds: while done < args.adds {
            // Sampling stalls once the graph is complete; give up then.
            for _ in 0..256 {
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                if u != v && !maintainer.graph().has_edge(u, v) {
                    maintainer.apply(kconn::maintainer::Command::Add(u, v))?;
                    done += 1;
                    continue 'adds;
                }
            }
            break;
        }
        let elapsed = started.elapsed();
        let rotations = maintainer.certificate().rotation_count() - start_rot;
        let per_add = rotations as f64 / done.max(1) as f64;
        let c = per_add / (k as f64 * (n as f64).log2());
        let _ = writeln!(
            report,
            "{:>8} {:>8} {:>14.1} {:>12.3} {:>10.1}",
            n,
            done,
            per_add,
            c,
            elapsed.as_secs_f64() * 1e3
        );
    }

    let (n, m) = (args.deletion_n, args.deletion_m);
    let _ = writeln!(report);
    let _ = writeln!(
        report,
        "deletion: n = {n}, m = {m}, k = {k}, one delete each way"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed.wrapping_add(1));
    let base = gen::random_k_connected(n, k, m.saturating_sub((k * n).div_ceil(2)), &mut rng)?;
    for sparsify in [true, false] {
        let mut maintainer = Maintainer::with_options(base.clone(), k, sparsify)?;
        let victim = maintainer.graph().sorted_edges()[0];
        let started = Instant::now();
        maintainer.apply(kconn::maintainer::Command::Delete(victim.a(), victim.b()))?;
        let elapsed = started.elapsed();
        let _ = writeln!(
            report,
            "  sparsifier {:>3}: {:>8.1} ms",
            if sparsify { "on" } else { "off" },
            elapsed.as_secs_f64() * 1e3
        );
    }

    write_output(args.out.as_deref(), &report)?;
    Ok(())
}
