#![allow(dead_code)]

use std::collections::HashSet;

use divtopk::{DiversityGraph, ScoredResult, Score};

/// Best score of every exact size by checking all `2^n` subsets.
pub fn subset_oracle<S: Score>(g: &DiversityGraph<S>, k: usize) -> Vec<Option<S>> {
    let n = g.len();
    assert!(n <= 20, "subset oracle is exponential");
    let adj: Vec<u32> = (0..n)
        .map(|i| g.neighbors(i).iter().fold(0u32, |m, &j| m | (1 << j)))
        .collect();
    let mut best: Vec<Option<S>> = vec![None; k + 1];
    best[0] = Some(S::zero());
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size > k {
            continue;
        }
        let independent = (0..n).all(|i| mask & (1 << i) == 0 || adj[i] & mask == 0);
        if !independent {
            continue;
        }
        let score = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .fold(S::zero(), |acc, i| acc + g.score(i));
        if best[size].map_or(true, |b| score > b) {
            best[size] = Some(score);
        }
    }
    best
}

/// Similarity predicate reproducing the edges of `g`, by result id.
pub fn edge_predicate<S: Score>(g: &DiversityGraph<S>) -> impl Fn(&ScoredResult<S>, &ScoredResult<S>) -> bool {
    let edges: HashSet<(String, String)> = g
        .edges()
        .into_iter()
        .flat_map(|(a, b)| {
            let (a, b) = (g.label_of(a).to_string(), g.label_of(b).to_string());
            [(a.clone(), b.clone()), (b, a)]
        })
        .collect();
    move |x, y| edges.contains(&(x.id.clone(), y.id.clone()))
}

/// Tiny deterministic generator for test parameters.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// The results of `g` as an incremental stream, best first.
pub fn incremental_stream<S: Score>(g: &DiversityGraph<S>) -> divtopk::framework::VecGenerator<S> {
    divtopk::framework::VecGenerator::incremental(g.results())
}

/// The results of `g` in a shuffled order, each prefix bounded by the best
/// remaining score plus a shrinking slack.
pub fn bounding_stream(g: &DiversityGraph<u32>, seed: u64) -> divtopk::framework::VecGenerator<u32> {
    let mut items = g.results();
    let mut rng = Lcg(seed);
    for i in (1..items.len()).rev() {
        items.swap(i, rng.below(i as u64 + 1) as usize);
    }
    let n = items.len();
    let bounds = (0..=n)
        .map(|i| items[i..].iter().map(|r| r.score).max().unwrap_or(0) + (n - i) as u32)
        .collect();
    divtopk::framework::VecGenerator::bounding(items, bounds).unwrap()
}
