//! Reference solvers: the greedy heuristic and an exhaustive oracle.

use crate::error::{Error, Result};
use crate::graph::{DiversityGraph, NodeId};
use crate::score::Score;
use crate::table::{Solution, SolutionTable};

/// Largest graph [`brute_force`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 25;

/// Outcome of [`greedy`]: nodes in the order they were picked.
#[derive(Clone, Debug, PartialEq)]
pub struct GreedyPick<S> {
    pub picks: Vec<NodeId>,
    pub score: S,
}

impl<S: Score> GreedyPick<S> {
    pub fn solution(&self) -> Solution<S> {
        Solution::new(self.picks.clone(), self.score)
    }

    /// Table whose entry `i` is the first `i` picks.
    pub fn prefix_table(&self, g: &DiversityGraph<S>, k: usize) -> SolutionTable<S> {
        let mut t = SolutionTable::new(k);
        let mut score = S::zero();
        for (i, &id) in self.picks.iter().enumerate().take(k) {
            score += g.score_of(id);
            t.offer(Solution::new(self.picks[..=i].to_vec(), score));
        }
        t
    }
}

/// Repeatedly takes the best remaining node and discards its neighbors,
/// stopping after `k` picks or when nothing remains. Score ties go to the
/// smaller id.
pub fn greedy<S: Score>(g: &DiversityGraph<S>, k: usize) -> GreedyPick<S> {
    let mut removed = vec![false; g.len()];
    let mut picks = Vec::new();
    let mut score = S::zero();
    // Nodes are already in pick order; a single scan suffices.
    for i in 0..g.len() {
        if picks.len() == k {
            break;
        }
        if removed[i] {
            continue;
        }
        picks.push(g.node_id(i));
        score += g.score(i);
        for &j in g.neighbors(i) {
            removed[j as usize] = true;
        }
    }
    GreedyPick { picks, score }
}

/// Exact table by enumerating every independent set of at most `k` nodes.
pub fn brute_force<S: Score>(g: &DiversityGraph<S>, k: usize) -> Result<SolutionTable<S>> {
    let n = g.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::GraphTooLarge {
            nodes: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let closed: Vec<u32> = (0..n)
        .map(|i| g.neighbors(i).iter().fold(1u32 << i, |m, &j| m | (1 << j)))
        .collect();
    let mut best: Vec<Option<(S, u32)>> = vec![None; k + 1];
    let mut stack: Vec<(usize, u32, u32, usize, S)> = vec![(0, 0, 0, 0, S::zero())];
    while let Some((next, chosen, blocked, size, score)) = stack.pop() {
        if size > 0 && best[size].map_or(true, |(s, _)| score > s) {
            best[size] = Some((score, chosen));
        }
        if size == k {
            continue;
        }
        for i in (next..n).rev() {
            if blocked & (1 << i) == 0 {
                stack.push((i + 1, chosen | (1 << i), blocked | closed[i], size + 1, score + g.score(i)));
            }
        }
    }
    let mut t = SolutionTable::new(k);
    for (score, mask) in best.into_iter().flatten() {
        let nodes = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| g.node_id(i)).collect();
        t.offer(Solution::new(nodes, score));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{build_diversity_graph, ScoredResult};

    #[test]
    fn greedy_on_fig1_misses_optimum() {
        let g = fixtures::fig1::<u32>();
        let r = greedy(&g, 3);
        let labels: Vec<_> = r.picks.iter().map(|&id| g.label_of(id)).collect();
        assert_eq!(labels, ["v1", "v2", "v6"]);
        assert_eq!(r.score, 19);
    }

    #[test]
    fn greedy_on_fig2_caterpillar() {
        let g = fixtures::fig2::<u32>();
        assert_eq!((g.len(), g.edge_count()), (201, 200));
        assert_eq!(greedy(&g, 100).score, 199);
    }

    #[test]
    fn greedy_edgeless_is_top_k() {
        let rs = (1..=5u32).map(|i| ScoredResult::new(format!("n{i}"), i)).collect();
        let g = build_diversity_graph(rs, |_, _| false).unwrap();
        assert_eq!(greedy(&g, 2).score, 9);
        let t = greedy(&g, 3).prefix_table(&g, 4);
        assert_eq!(t.scores(), vec![Some(0), Some(5), Some(9), Some(12), None]);
    }

    #[test]
    fn oracle_fig1() {
        let g = fixtures::fig1::<u32>();
        let t = brute_force(&g, 3).unwrap();
        assert_eq!(t.scores(), vec![Some(0), Some(10), Some(18), Some(20)]);
        t.validate(&g).unwrap();
    }

    #[test]
    fn oracle_complete_graph() {
        let rs = (1..=5u32).map(|i| ScoredResult::new(format!("n{i}"), i)).collect();
        let g = build_diversity_graph(rs, |_, _| true).unwrap();
        let t = brute_force(&g, 4).unwrap();
        assert_eq!(t.scores(), vec![Some(0), Some(5), None, None, None]);
    }

    #[test]
    fn oracle_guard() {
        let g = fixtures::fig2::<u32>();
        assert!(matches!(
            brute_force(&g, 3),
            Err(Error::GraphTooLarge { nodes: 201, limit: 25 })
        ));
    }
}
