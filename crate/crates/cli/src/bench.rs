use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};

use divtopk::io::{read_graph, score_json};
use divtopk::{DivSolver, Error, Graph, SearchContext, SearchOptions};

use crate::{budget, load_engine, solve_table, Mode};

#[derive(clap::Args)]
pub(crate) struct BenchArgs {
    /// Graph file to solve directly.
    #[arg(long, conflicts_with_all = ["corpus", "query"])]
    graph: Option<PathBuf>,
    /// Corpus to query instead of a graph file.
    #[arg(long, requires = "query")]
    corpus: Option<PathBuf>,
    #[arg(long)]
    query: Option<String>,
    #[arg(long)]
    stopwords: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "incremental")]
    mode: Mode,
    #[arg(long, value_delimiter = ',', default_value = "astar,dp,cut")]
    algos: Vec<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    k_list: Vec<usize>,
    /// Similarity thresholds; only used with a corpus.
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    tau_list: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    repeat: usize,
    #[arg(long, default_value_t = 60_000)]
    timeout_ms: u64,
    /// Abort a best-first search whose heap outgrows this many entries.
    #[arg(long)]
    max_entries: Option<usize>,
}

const EXACT: [&str; 4] = ["astar", "dp", "cut", "brute"];

struct Row {
    elapsed_ms: u128,
    peak_entries: usize,
    score: Option<f64>,
    status: &'static str,
}

fn status_of(e: &anyhow::Error) -> &'static str {
    match e.downcast_ref::<Error>() {
        Some(Error::Timeout) => "timeout",
        Some(Error::HeapLimit { .. }) => "memory",
        _ => "error",
    }
}

fn finish(start: Instant, result: anyhow::Result<f64>, peak_entries: usize, label: &str) -> Row {
    let elapsed_ms = start.elapsed().as_millis();
    match result {
        Ok(score) => Row {
            elapsed_ms,
            peak_entries,
            score: Some(score),
            status: "ok",
        },
        Err(e) => {
            let status = status_of(&e);
            if status == "error" {
                eprintln!("{label}: {e:#}");
            }
            Row {
                elapsed_ms,
                peak_entries,
                score: None,
                status,
            }
        }
    }
}

pub(crate) fn run(args: BenchArgs) -> anyhow::Result<ExitCode> {
    if args.k_list.iter().any(|&k| k == 0) {
        bail!("--k-list entries must be at least 1");
    }
    if args.repeat == 0 {
        bail!("--repeat must be at least 1");
    }
    let graph: Option<Graph> = match &args.graph {
        Some(p) => Some(read_graph(p).with_context(|| format!("reading graph {}", p.display()))?),
        None => None,
    };
    let engine = match (&args.corpus, &graph) {
        (Some(c), _) => Some(load_engine(c, args.stopwords.as_ref())?),
        (None, Some(_)) => None,
        (None, None) => bail!("pass --graph or --corpus with --query"),
    };
    let solvers: Vec<(String, Option<DivSolver>)> = args
        .algos
        .iter()
        .map(|a| {
            let parsed = match a.as_str() {
                "brute" if engine.is_none() => None,
                other => Some(other.parse::<DivSolver>()?),
            };
            Ok((a.clone(), parsed))
        })
        .collect::<anyhow::Result<_>>()?;
    let taus: Vec<Option<f64>> = if engine.is_some() {
        args.tau_list.iter().map(|&t| Some(t)).collect()
    } else {
        vec![None]
    };

    let mut out = std::io::stdout().lock();
    writeln!(out, "algo,k,tau,elapsed_ms,peak_entries,score,status")?;
    let mut mismatch = false;
    for &k in &args.k_list {
        for &tau in &taus {
            for rep in 0..args.repeat {
                let mut exact: HashMap<String, f64> = HashMap::new();
                for (name, solver) in &solvers {
                    let start = Instant::now();
                    let mut peak = 0;
                    let result = match (&engine, &graph, solver) {
                        (Some(engine), _, Some(s)) => {
                            let mut options = SearchOptions {
                                always_solve: false,
                                budget: budget(Some(args.timeout_ms)),
                            };
                            if let Some(m) = args.max_entries {
                                options.budget = options.budget.with_max_heap(m);
                            }
                            engine
                                .search(args.query.as_deref().unwrap_or(""), k, tau.unwrap_or(1.0), *s, args.mode.into(), options)
                                .map(|o| {
                                    peak = o.stats.peak_entries();
                                    o.best().score
                                })
                                .map_err(anyhow::Error::from)
                        }
                        (_, Some(g), _) => {
                            let mut b = budget(Some(args.timeout_ms));
                            if let Some(m) = args.max_entries {
                                b = b.with_max_heap(m);
                            }
                            let mut ctx = SearchContext::new(b);
                            let r = solve_table(g, k, name, &mut ctx).map(|t| t.best().score);
                            peak = ctx.stats.peak_entries();
                            r
                        }
                        _ => Err(anyhow::anyhow!("algorithm {name} needs a graph file")),
                    };
                    let row = finish(start, result, peak, name);
                    let score = row.score.map(|s| score_json(s).to_string()).unwrap_or_default();
                    let tau_s = tau.map(|t| t.to_string()).unwrap_or_default();
                    writeln!(
                        out,
                        "{name},{k},{tau_s},{},{},{score},{}",
                        row.elapsed_ms, row.peak_entries, row.status
                    )?;
                    out.flush()?;
                    if let (Some(s), true) = (row.score, EXACT.contains(&name.as_str())) {
                        exact.insert(name.clone(), s);
                    }
                }
                let mut scores = exact.iter();
                if let Some((first_name, &first)) = scores.next() {
                    for (name, &s) in scores {
                        if (s - first).abs() > 1e-9 * first.abs().max(1.0) {
                            mismatch = true;
                            eprintln!(
                                "score mismatch at k={k} tau={} repeat={rep}: {first_name}={first} {name}={s}",
                                tau.map(|t| t.to_string()).unwrap_or_default()
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(if mismatch { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}
