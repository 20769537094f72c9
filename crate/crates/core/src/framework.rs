//! Early-stopping driver over a stream of scored results.
//!
//! Results are pulled one at a time from a [`ResultGenerator`]. After a
//! solve, the driver compares the best score found so far with the best
//! score any completion of the stream could still reach; once nothing
//! unseen can help, it stops. Solves whose outcome cannot enable a stop are
//! skipped.

use crate::baselines::greedy;
use crate::error::{Error, Result};
use crate::graph::{DiversityGraph, ScoredResult};
use crate::score::Score;
use crate::solver::{solve, Algorithm, Budget, SearchContext, SearchStats};
use crate::table::SolutionTable;

/// How a generator bounds the results it has not produced yet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorMode {
    /// Results arrive in non-increasing score order; the last score bounds
    /// the rest.
    Incremental,
    /// Results arrive in any order with a separate, non-increasing bound.
    Bounding,
}

/// A stream of scored results with a bound on the unseen ones.
pub trait ResultGenerator<S> {
    fn mode(&self) -> GeneratorMode;

    /// The next result, or `None` when the stream is exhausted.
    fn next_result(&mut self) -> Option<ScoredResult<S>>;

    /// Upper bound on every result not yet returned; `None` if no bound is
    /// known yet.
    fn unseen_bound(&self) -> Option<S>;
}

/// Replays a fixed list of results in the given order.
#[derive(Clone, Debug)]
pub struct VecGenerator<S> {
    items: Vec<ScoredResult<S>>,
    next: usize,
    mode: GeneratorMode,
    bounds: Option<Vec<S>>,
}

impl<S: Score> VecGenerator<S> {
    /// Incremental stream; `items` must be sorted by non-increasing score.
    pub fn incremental(items: Vec<ScoredResult<S>>) -> Self {
        Self {
            items,
            next: 0,
            mode: GeneratorMode::Incremental,
            bounds: None,
        }
    }

    /// Bounding stream where `bounds[i]` is the unseen bound after `i`
    /// results have been returned (`bounds.len() == items.len() + 1`).
    pub fn bounding(items: Vec<ScoredResult<S>>, bounds: Vec<S>) -> Result<Self> {
        if bounds.len() != items.len() + 1 {
            return Err(Error::InvalidInput("need one bound per prefix".into()));
        }
        Ok(Self {
            items,
            next: 0,
            mode: GeneratorMode::Bounding,
            bounds: Some(bounds),
        })
    }
}

impl<S: Score> ResultGenerator<S> for VecGenerator<S> {
    fn mode(&self) -> GeneratorMode {
        self.mode
    }

    fn next_result(&mut self) -> Option<ScoredResult<S>> {
        let r = self.items.get(self.next).cloned()?;
        self.next += 1;
        Some(r)
    }

    fn unseen_bound(&self) -> Option<S> {
        match &self.bounds {
            Some(b) => b.get(self.next).copied(),
            None if self.next == 0 => None,
            None => Some(self.items[self.next - 1].score),
        }
    }
}

/// Best score reachable by extending the current table with unseen results
/// scoring at most `u_bar`: the maximum of `score_i + (k - i) * u_bar` over
/// present sizes `i <= k`.
pub fn best_upper_bound<S: Score>(table: &SolutionTable<S>, k: usize, u_bar: S) -> S {
    let mut best = u_bar.times(k);
    for (i, sol) in table.iter().take_while(|&(i, _)| i <= k) {
        let b = sol.score + u_bar.times(k - i);
        if b > best {
            best = b;
        }
    }
    best
}

/// True iff the table's best score within `k` already meets the bound.
pub fn sufficient_stop<S: Score>(table: &SolutionTable<S>, k: usize, u_bar: S) -> bool {
    table.best_within(k).score >= best_upper_bound(table, k, u_bar)
}

/// What the driver knows between pulls.
#[derive(Clone, Debug)]
pub struct DriverState<S> {
    pub seen: Vec<ScoredResult<S>>,
    pub table: SolutionTable<S>,
    /// Number of results at the last solve.
    pub s_prime_size: usize,
    /// Largest present size in the last solved table.
    pub last_max_feasible: usize,
    pub exhausted: bool,
}

impl<S: Score> DriverState<S> {
    pub fn new(k: usize) -> Self {
        Self {
            seen: Vec::new(),
            table: SolutionTable::new(k),
            s_prime_size: 0,
            last_max_feasible: 0,
            exhausted: false,
        }
    }

    /// The `k`-th largest seen score, if at least `k` results were seen.
    pub fn kth_score(&self, k: usize) -> Option<S> {
        if k == 0 || self.seen.len() < k {
            return None;
        }
        let mut scores: Vec<S> = self.seen.iter().map(|r| r.score).collect();
        scores.sort_by(|a, b| crate::score::cmp_scores(*b, *a));
        Some(scores[k - 1])
    }
}

/// Whether a solve now could possibly allow stopping.
pub fn necessary_check<S: Score>(state: &DriverState<S>, k: usize, u_bar: Option<S>) -> bool {
    if state.exhausted {
        return true;
    }
    let grown = state.seen.len() + state.last_max_feasible >= state.s_prime_size + k;
    let tail = match (state.kth_score(k), u_bar) {
        (Some(kth), Some(u)) => kth >= u,
        _ => false,
    };
    grown && tail
}

/// Solver used inside [`div_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivSolver {
    Exact(Algorithm),
    /// The greedy heuristic; its tables are not optimal, so the whole
    /// stream is consumed before it runs once.
    Greedy,
}

impl DivSolver {
    pub fn name(self) -> &'static str {
        match self {
            DivSolver::Exact(a) => a.name(),
            DivSolver::Greedy => "greedy",
        }
    }
}

impl std::str::FromStr for DivSolver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(DivSolver::Greedy),
            other => other.parse().map(DivSolver::Exact),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    /// Solve after every pull, ignoring [`necessary_check`].
    pub always_solve: bool,
    pub budget: Budget,
}

/// Measurements taken right after one solve.
#[derive(Clone, Debug, PartialEq)]
pub struct Iteration<S> {
    pub seen: usize,
    pub achieved: S,
    /// `None` while the unseen results are unbounded.
    pub upper: Option<S>,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome<S> {
    pub table: SolutionTable<S>,
    /// Diversity graph of every result seen.
    pub graph: DiversityGraph<S>,
    pub generated: usize,
    pub solver_calls: usize,
    pub iterations: Vec<Iteration<S>>,
    pub stats: SearchStats,
}

impl<S: Score> SearchOutcome<S> {
    pub fn best(&self) -> &crate::table::Solution<S> {
        self.table.best()
    }
}

/// Collected results with their similarity edges.
struct Growing<S> {
    results: Vec<ScoredResult<S>>,
    edges: Vec<(usize, usize)>,
}

impl<S: Score> Growing<S> {
    fn push<F>(&mut self, r: ScoredResult<S>, similar: &mut F)
    where
        F: FnMut(&ScoredResult<S>, &ScoredResult<S>) -> bool,
    {
        let idx = self.results.len();
        for (j, prior) in self.results.iter().enumerate() {
            if similar(prior, &r) {
                self.edges.push((j, idx));
            }
        }
        self.results.push(r);
    }

    fn snapshot(&self) -> Result<DiversityGraph<S>> {
        DiversityGraph::from_edges(self.results.clone(), self.edges.iter().copied())
    }
}

/// Streams results from `gen` into a growing diversity graph and returns
/// the best table once no unseen result can improve the answer.
pub fn div_search<S, G, F>(
    gen: &mut G,
    solver: DivSolver,
    mut similar: F,
    k: usize,
    options: SearchOptions,
) -> Result<SearchOutcome<S>>
where
    S: Score,
    G: ResultGenerator<S> + ?Sized,
    F: FnMut(&ScoredResult<S>, &ScoredResult<S>) -> bool,
{
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let mode = gen.mode();
    let mut state = DriverState::new(k);
    let mut grow = Growing {
        results: Vec::new(),
        edges: Vec::new(),
    };
    let mut ctx = SearchContext::new(options.budget);
    let mut solver_calls = 0;
    let mut iterations = Vec::new();
    let mut last_score: Option<S> = None;
    let mut prev_bound = gen.unseen_bound();
    let mut graph;

    loop {
        match gen.next_result() {
            None => state.exhausted = true,
            Some(r) => {
                if !r.score.is_valid_score() {
                    return Err(Error::InvalidScore(r.id));
                }
                if let Some(u) = prev_bound {
                    if r.score > u {
                        return Err(Error::GeneratorContract(format!(
                            "result {} scores {} above the announced bound {u}",
                            r.id, r.score
                        )));
                    }
                }
                if mode == GeneratorMode::Incremental {
                    if let Some(prev) = last_score {
                        if r.score > prev {
                            return Err(Error::GeneratorContract(format!(
                                "incremental result {} scores {} after {prev}",
                                r.id, r.score
                            )));
                        }
                    }
                }
                last_score = Some(r.score);
                state.seen.push(r.clone());
                grow.push(r, &mut similar);
            }
        }
        let u_bar = if state.exhausted { Some(S::zero()) } else { gen.unseen_bound() };
        if let (Some(prev), Some(now)) = (prev_bound, u_bar) {
            if now > prev && !state.exhausted {
                return Err(Error::GeneratorContract(format!("unseen bound rose from {prev} to {now}")));
            }
        }
        prev_bound = u_bar.or(prev_bound);

        if solver == DivSolver::Greedy {
            if !state.exhausted {
                continue;
            }
            graph = grow.snapshot()?;
            let picks = greedy(&graph, k);
            state.table = picks.prefix_table(&graph, k);
            solver_calls += 1;
            iterations.push(Iteration {
                seen: state.seen.len(),
                achieved: picks.score,
                upper: None,
            });
            break;
        }

        if !(options.always_solve || necessary_check(&state, k, u_bar)) {
            continue;
        }
        graph = grow.snapshot()?;
        let DivSolver::Exact(alg) = solver else { unreachable!() };
        state.table = solve(&graph, k, alg, &mut ctx)?;
        state.s_prime_size = state.seen.len();
        state.last_max_feasible = state.table.max_feasible_size();
        solver_calls += 1;
        iterations.push(Iteration {
            seen: state.seen.len(),
            achieved: state.table.best_within(k).score,
            upper: u_bar.map(|u| best_upper_bound(&state.table, k, u)),
        });
        if state.exhausted {
            break;
        }
        if let Some(u) = u_bar {
            if sufficient_stop(&state.table, k, u) {
                break;
            }
        }
    }

    Ok(SearchOutcome {
        table: state.table,
        graph,
        generated: state.seen.len(),
        solver_calls,
        iterations,
        stats: ctx.stats,
    })
}
