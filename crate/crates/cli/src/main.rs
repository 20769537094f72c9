//! `divtopk`: diversified top-k search from the command line.
//!
//! Machine-readable output goes to stdout, diagnostics to stderr.

mod bench;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use divtopk::fixtures::{self, CaterpillarParams};
use divtopk::io::{graph_to_json, read_graph, score_json};
use divtopk::textsearch::{Corpus, SearchEngine, Stopwords};
use divtopk::{
    brute_force, greedy, solve, Algorithm, Budget, DivSolver, GeneratorMode, Graph, SearchContext, SearchOptions,
    Table,
};

#[derive(Parser)]
#[command(name = "divtopk", version, about = "Diversified top-k search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diversified keyword search over a JSON Lines corpus.
    Search(SearchArgs),
    /// Solve a graph file for every size up to k.
    Solve(SolveArgs),
    /// Time solvers over k and tau sweeps; prints CSV.
    Bench(bench::BenchArgs),
    /// Write a fixture graph.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum Mode {
    Incremental,
    Bounding,
}

impl From<Mode> for GeneratorMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Incremental => GeneratorMode::Incremental,
            Mode::Bounding => GeneratorMode::Bounding,
        }
    }
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    query: String,
    #[arg(long)]
    k: usize,
    /// Documents with similarity above this are redundant.
    #[arg(long)]
    tau: f64,
    /// astar, dp, cut or greedy.
    #[arg(long, default_value = "cut")]
    algo: String,
    #[arg(long, value_enum, default_value = "incremental")]
    mode: Mode,
    /// One stopword per line; defaults to a built-in English list.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    #[arg(long)]
    timeout_ms: Option<u64>,
}

#[derive(clap::Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    /// astar, dp, cut, greedy or brute.
    #[arg(long, default_value = "cut")]
    algo: String,
    #[arg(long)]
    timeout_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Fig1,
    Fig2,
    Random,
    Caterpillar,
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Node count for random graphs.
    #[arg(long, default_value_t = 12)]
    n: usize,
    /// Edge probability for random graphs, chord probability for
    /// caterpillars.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 40)]
    blocks: usize,
    #[arg(long, default_value_t = 6)]
    block_size: usize,
    /// Blocks per connected chain; 0 joins all blocks into one chain.
    #[arg(long, default_value_t = 0)]
    chain: usize,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub(crate) fn stopwords(path: Option<&PathBuf>) -> anyhow::Result<Stopwords> {
    match path {
        Some(p) => Stopwords::load(p).with_context(|| format!("reading stopwords {}", p.display())),
        None => Ok(Stopwords::builtin()),
    }
}

pub(crate) fn load_engine(corpus: &PathBuf, stop: Option<&PathBuf>) -> anyhow::Result<SearchEngine> {
    let corpus = Corpus::load(corpus, stopwords(stop)?).with_context(|| format!("reading corpus {}", corpus.display()))?;
    Ok(SearchEngine::new(corpus))
}

pub(crate) fn budget(timeout_ms: Option<u64>) -> Budget {
    match timeout_ms {
        Some(ms) => Budget::default().with_timeout(Duration::from_millis(ms)),
        None => Budget::default(),
    }
}

fn check_k(k: usize) -> anyhow::Result<()> {
    if k == 0 {
        bail!("--k must be at least 1");
    }
    Ok(())
}

fn search(args: SearchArgs) -> anyhow::Result<Value> {
    check_k(args.k)?;
    if !(0.0..=1.0).contains(&args.tau) {
        bail!("--tau must lie in [0, 1]");
    }
    let solver: DivSolver = args.algo.parse()?;
    let engine = load_engine(&args.corpus, args.stopwords.as_ref())?;
    let options = SearchOptions {
        always_solve: false,
        budget: budget(args.timeout_ms),
    };
    let start = Instant::now();
    let out = engine.search(&args.query, args.k, args.tau, solver, args.mode.into(), options)?;
    let elapsed = start.elapsed();
    let best = out.best();
    let results: Vec<Value> = best
        .nodes
        .iter()
        .map(|&id| json!({"id": out.graph.label_of(id), "score": score_json(out.graph.score_of(id))}))
        .collect();
    Ok(json!({
        "k": args.k,
        "score": score_json(best.score),
        "results": results,
        "stats": {
            "generated": out.generated,
            "solver_calls": out.solver_calls,
            "elapsed_ms": elapsed.as_millis() as u64,
        },
    }))
}

fn table_json(g: &Graph, t: &Table) -> Vec<Value> {
    t.iter()
        .map(|(size, sol)| {
            json!({
                "size": size,
                "score": score_json(sol.score),
                "ids": sol.labels(g),
            })
        })
        .collect()
}

pub(crate) fn solve_table(g: &Graph, k: usize, algo: &str, ctx: &mut SearchContext<f64>) -> anyhow::Result<Table> {
    Ok(match algo {
        "greedy" => greedy(g, k).prefix_table(g, k),
        "brute" => brute_force(g, k)?,
        other => solve(g, k, other.parse::<Algorithm>()?, ctx)?,
    })
}

fn solve_cmd(args: SolveArgs) -> anyhow::Result<Value> {
    check_k(args.k)?;
    let g: Graph = read_graph(&args.graph).with_context(|| format!("reading graph {}", args.graph.display()))?;
    let mut ctx = SearchContext::new(budget(args.timeout_ms));
    let t = solve_table(&g, args.k, &args.algo, &mut ctx)?;
    let best = t.best();
    Ok(json!({
        "k": args.k,
        "algo": args.algo,
        "score": score_json(best.score),
        "best": best.labels(&g),
        "table": table_json(&g, &t),
    }))
}

fn gen(args: &GenArgs) -> anyhow::Result<Graph> {
    if let Some(p) = args.p {
        if !(0.0..=1.0).contains(&p) {
            bail!("--p must lie in [0, 1]");
        }
    }
    Ok(match args.kind {
        Kind::Fig1 => fixtures::fig1(),
        Kind::Fig2 => fixtures::fig2(),
        Kind::Random => fixtures::random_graph(args.n, args.p.unwrap_or(0.3), args.seed),
        Kind::Caterpillar => {
            if args.block_size < 3 {
                bail!("--block-size must be at least 3");
            }
            fixtures::caterpillar(CaterpillarParams {
                blocks: args.blocks,
                block_size: args.block_size,
                chain: args.chain,
                chord_p: args.p.unwrap_or(0.3),
                seed: args.seed,
            })
        }
    })
}

fn emit(v: &Value) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Search(a) => emit(&search(a)?)?,
        Command::Solve(a) => emit(&solve_cmd(a)?)?,
        Command::Bench(a) => return bench::run(a),
        Command::Gen(a) => {
            let g = gen(&a)?;
            let mut text = serde_json::to_string_pretty(&graph_to_json(&g))?;
            text.push('\n');
            match &a.out {
                Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
                None => std::io::stdout().lock().write_all(text.as_bytes())?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
