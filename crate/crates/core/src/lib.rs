//! Diversified top-k search.
//!
//! Given scored results and a similarity relation, find at most `k`
//! pairwise dissimilar results with the largest total score. Results and
//! similarities form a [`DiversityGraph`]; the answer is a maximum-score
//! independent set of bounded size. Every solver returns a
//! [`SolutionTable`] holding the best set of each exact size up to `k`.
//!
//! Three exact solvers are provided: best-first search ([`div_astar`]),
//! decomposition into connected components ([`div_dp`]) and decomposition
//! along cut points ([`div_cut`]). [`div_search`] drives any of them over a
//! result stream and stops as soon as unseen results cannot help.
//!
//! ```
//! use divtopk::{div_cut, fixtures, Algorithm};
//!
//! let g = fixtures::fig1::<u32>();
//! let table = div_cut(&g, 3);
//! assert_eq!(table.best().score, 20);
//! assert_eq!(table.best().labels(&g), ["v3", "v4", "v5"]);
//! # let _ = Algorithm::Cut;
//! ```

pub mod algebra;
pub mod astar;
pub mod baselines;
pub mod cut;
pub mod dp;
mod error;
pub mod fixtures;
pub mod framework;
mod graph;
pub mod io;
mod score;
mod solver;
mod table;
pub mod textsearch;

pub use algebra::{oplus, otimes};
pub use astar::{div_astar, div_astar_in};
pub use baselines::{brute_force, greedy, GreedyPick};
pub use cut::{div_cut, div_cut_in};
pub use dp::{div_dp, div_dp_in};
pub use error::{Error, Result};
pub use framework::{div_search, DivSolver, GeneratorMode, ResultGenerator, SearchOptions, SearchOutcome};
pub use graph::{build_diversity_graph, DiversityGraph, NodeId, ScoredResult};
pub use score::Score;
pub use solver::{solve, Algorithm, Budget, PopRecord, SearchContext, SearchStats};
pub use table::{Solution, SolutionTable};

/// Rational scores for exact arithmetic on fractional inputs.
pub type RationalScore = num_rational::Ratio<i64>;

/// Graph with real-valued scores, as produced by text retrieval.
pub type Graph = DiversityGraph<f64>;
/// Table with real-valued scores.
pub type Table = SolutionTable<f64>;
/// Graph with integer scores.
pub type IntGraph = DiversityGraph<u64>;
/// Table with integer scores.
pub type IntTable = SolutionTable<u64>;
