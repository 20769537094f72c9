//! Shared solver plumbing: algorithm selection, search budgets, statistics.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{DiversityGraph, NodeId};
use crate::score::Score;
use crate::table::SolutionTable;
use crate::{astar, cut, dp};

/// Exact solvers for the per-size diversified top-k table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    AStar,
    Dp,
    Cut,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::AStar, Algorithm::Dp, Algorithm::Cut];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::AStar => "astar",
            Algorithm::Dp => "dp",
            Algorithm::Cut => "cut",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "astar" => Ok(Algorithm::AStar),
            "dp" => Ok(Algorithm::Dp),
            "cut" => Ok(Algorithm::Cut),
            other => Err(Error::InvalidInput(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Limits on a search. The default is unlimited.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub deadline: Option<Instant>,
    pub max_heap: Option<usize>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }

    pub fn with_max_heap(mut self, entries: usize) -> Self {
        self.max_heap = Some(entries);
        self
    }

    pub(crate) fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }

    pub(crate) fn check_heap(&self, len: usize) -> Result<()> {
        match self.max_heap {
            Some(limit) if len > limit => Err(Error::HeapLimit { limit }),
            _ => Ok(()),
        }
    }
}

/// Counters collected while solving.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub astar_calls: u64,
    pub pops: u64,
    pub pushes: u64,
    pub peak_heap: usize,
    pub live_tables: usize,
    pub peak_tables: usize,
    pub entry_graph_searches: u64,
}

impl SearchStats {
    /// Largest heap plus the most solution tables held at once.
    pub fn peak_entries(&self) -> usize {
        self.peak_heap + self.peak_tables
    }

    pub(crate) fn retain_tables(&mut self, n: usize) {
        self.live_tables += n;
        self.peak_tables = self.peak_tables.max(self.live_tables);
    }

    pub(crate) fn release_tables(&mut self, n: usize) {
        self.live_tables = self.live_tables.saturating_sub(n);
    }

    pub(crate) fn observe_heap(&mut self, len: usize) {
        self.peak_heap = self.peak_heap.max(len);
    }
}

/// One entry removed from the A* heap.
#[derive(Clone, Debug, PartialEq)]
pub struct PopRecord<S> {
    pub kprime: usize,
    pub solution: Vec<NodeId>,
    pub score: S,
    pub bound: S,
}

/// Budget, statistics and an optional A* pop trace for one solve.
#[derive(Clone, Debug)]
pub struct SearchContext<S> {
    pub budget: Budget,
    pub stats: SearchStats,
    pub trace: Option<Vec<PopRecord<S>>>,
}

impl<S> Default for SearchContext<S> {
    fn default() -> Self {
        Self {
            budget: Budget::default(),
            stats: SearchStats::default(),
            trace: None,
        }
    }
}

impl<S> SearchContext<S> {
    pub fn new(budget: Budget) -> Self {
        Self {
            budget,
            ..Self::default()
        }
    }

    /// Records every A* pop.
    pub fn traced() -> Self {
        Self {
            trace: Some(Vec::new()),
            ..Self::default()
        }
    }
}

/// Runs the chosen exact solver.
pub fn solve<S: Score>(
    g: &DiversityGraph<S>,
    k: usize,
    algorithm: Algorithm,
    ctx: &mut SearchContext<S>,
) -> Result<SolutionTable<S>> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    match algorithm {
        Algorithm::AStar => astar::div_astar_in(g, k, ctx),
        Algorithm::Dp => dp::div_dp_in(g, k, ctx),
        Algorithm::Cut => cut::div_cut_in(g, k, ctx),
    }
}
