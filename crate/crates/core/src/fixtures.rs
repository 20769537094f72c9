//! Deterministic graphs used by tests, benchmarks and the `gen` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{DiversityGraph, ScoredResult};
use crate::score::Score;

fn results<S: Score>(items: &[(&str, u32)]) -> Vec<ScoredResult<S>> {
    items
        .iter()
        .map(|&(id, s)| ScoredResult::new(id, S::from_u32(s).expect("small integer fits every score type")))
        .collect()
}

fn build<S: Score>(items: &[(&str, u32)], edges: &[(&str, &str)]) -> DiversityGraph<S> {
    DiversityGraph::from_labeled_edges(results(items), edges.iter().copied()).expect("fixture is well formed")
}

/// Six results where the best three are not the greedy three.
///
/// Optimal scores by size are 10, 18, 20; greedy reaches 19 at size 3.
pub fn fig1<S: Score>() -> DiversityGraph<S> {
    build(
        &[("v1", 10), ("v2", 8), ("v3", 7), ("v4", 7), ("v5", 6), ("v6", 1)],
        &[("v1", "v3"), ("v1", "v4"), ("v1", "v5"), ("v2", "v3"), ("v2", "v4")],
    )
}

/// Two components: `v1..v5` (the first five nodes of [`fig1`]) and
/// `u1..u5`, where `u1` and `u3` are each adjacent to `u2`, `u4`, `u5`.
pub fn fig6<S: Score>() -> DiversityGraph<S> {
    build(
        &[
            ("v1", 10),
            ("v2", 8),
            ("v3", 7),
            ("v4", 7),
            ("v5", 6),
            ("u1", 10),
            ("u2", 8),
            ("u3", 8),
            ("u4", 7),
            ("u5", 7),
        ],
        &[
            ("v1", "v3"),
            ("v1", "v4"),
            ("v1", "v5"),
            ("v2", "v3"),
            ("v2", "v4"),
            ("u1", "u2"),
            ("u1", "u4"),
            ("u1", "u5"),
            ("u3", "u2"),
            ("u3", "u4"),
            ("u3", "u5"),
        ],
    )
}

/// 201 nodes and 200 edges: a hub `A` (100) joined to `B001..B100` (99
/// each), and every `Bi` joined to its own leaf `Ci` (1).
///
/// Greedy with k = 100 takes the hub and 99 leaves (199); all `B`s give
/// 9900.
pub fn fig2<S: Score>() -> DiversityGraph<S> {
    let s = |v: u32| S::from_u32(v).expect("small integer fits every score type");
    let mut rs = vec![ScoredResult::new("A", s(100))];
    let mut edges = Vec::with_capacity(200);
    for i in 1..=100 {
        let b = rs.len();
        rs.push(ScoredResult::new(format!("B{i:03}"), s(99)));
        rs.push(ScoredResult::new(format!("C{i:03}"), s(1)));
        edges.push((0, b));
        edges.push((b, b + 1));
    }
    DiversityGraph::from_edges(rs, edges).expect("fixture is well formed")
}

fn random_score<S: Score>(rng: &mut ChaCha8Rng) -> S {
    S::from_u32(rng.gen_range(1..=100)).expect("small integer fits every score type")
}

fn label(i: usize, n: usize) -> String {
    let width = n.saturating_sub(1).max(1).to_string().len();
    format!("n{i:0width$}")
}

/// `G(n, p)` with integer scores drawn uniformly from `1..=100`.
pub fn random_graph<S: Score>(n: usize, p: f64, seed: u64) -> DiversityGraph<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rs = (0..n).map(|i| ScoredResult::new(label(i, n), random_score(&mut rng))).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((a, b));
            }
        }
    }
    DiversityGraph::from_edges(rs, edges).expect("generated graph is well formed")
}

/// Shape of a [`caterpillar`] graph.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CaterpillarParams {
    /// Total number of blocks.
    pub blocks: usize,
    /// Nodes per block, at least 3.
    pub block_size: usize,
    /// Blocks per connected chain; 0 puts every block in one chain.
    pub chain: usize,
    /// Probability of each chord inside a block.
    pub chord_p: f64,
    pub seed: u64,
}

impl Default for CaterpillarParams {
    fn default() -> Self {
        Self {
            blocks: 40,
            block_size: 6,
            chain: 0,
            chord_p: 0.3,
            seed: 1,
        }
    }
}

/// Chains of biconnected blocks, consecutive blocks of a chain sharing one
/// node. Each block is a cycle plus random chords; scores are drawn
/// uniformly from `1..=100`.
pub fn caterpillar<S: Score>(params: CaterpillarParams) -> DiversityGraph<S> {
    let CaterpillarParams {
        blocks,
        block_size,
        chain,
        chord_p,
        seed,
    } = params;
    let block_size = block_size.max(3);
    let chain = if chain == 0 { blocks.max(1) } else { chain };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut n = 0usize;
    let mut left_end = None;
    for b in 0..blocks {
        if b % chain == 0 {
            left_end = None;
        }
        let mut members = Vec::with_capacity(block_size);
        members.push(left_end.unwrap_or_else(|| {
            n += 1;
            n - 1
        }));
        while members.len() < block_size {
            members.push(n);
            n += 1;
        }
        for i in 0..block_size {
            edges.push((members[i], members[(i + 1) % block_size]));
        }
        for i in 0..block_size {
            for j in (i + 2)..block_size {
                if !(i == 0 && j == block_size - 1) && rng.gen_bool(chord_p.clamp(0.0, 1.0)) {
                    edges.push((members[i], members[j]));
                }
            }
        }
        left_end = Some(members[block_size / 2]);
    }
    let rs = (0..n).map(|i| ScoredResult::new(label(i, n), random_score(&mut rng))).collect();
    DiversityGraph::from_edges(rs, edges).expect("generated graph is well formed")
}
