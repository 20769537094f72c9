//! Articulation points and biconnected blocks.

use crate::error::{Error, Result};
use crate::graph::{DiversityGraph, NodeId};
use crate::score::Score;

const UNSET: u32 = u32::MAX;

/// Blocks of a connected graph and which nodes are articulation points.
pub(crate) struct Blocks {
    /// Each block's node set as ascending local indices.
    pub blocks: Vec<Vec<usize>>,
    pub is_cut: Vec<bool>,
}

/// Iterative Tarjan over local indices; `g` must be connected.
pub(crate) fn blocks<S: Score>(g: &DiversityGraph<S>) -> Blocks {
    let n = g.len();
    let mut disc = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut is_cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // (node, parent, next neighbor offset)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    let mut time = 0u32;

    for root in 0..n {
        if disc[root] != UNSET {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        stack.push((root, usize::MAX, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, parent, next) = *frame;
            if let Some(&w) = g.neighbors(v).get(next) {
                frame.2 += 1;
                let w = w as usize;
                if disc[w] == UNSET {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edges.push((v, w));
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edges.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if parent == usize::MAX {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                if parent != root {
                    is_cut[parent] = true;
                }
                let mut block = Vec::new();
                while let Some((a, b)) = edges.pop() {
                    block.push(a);
                    block.push(b);
                    if (a, b) == (parent, v) {
                        break;
                    }
                }
                block.sort_unstable();
                block.dedup();
                blocks.push(block);
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    Blocks { blocks, is_cut }
}

/// Articulation points of a connected graph, ascending.
pub fn cut_points<S: Score>(g: &DiversityGraph<S>) -> Result<Vec<NodeId>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let b = blocks(g);
    Ok((0..g.len()).filter(|&i| b.is_cut[i]).map(|i| g.node_id(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ScoredResult;

    fn graph(n: usize, edges: &[(usize, usize)]) -> DiversityGraph<u32> {
        let rs = (0..n).map(|i| ScoredResult::new(format!("n{i}"), 10 - i as u32)).collect();
        DiversityGraph::from_edges(rs, edges.iter().copied()).unwrap()
    }

    fn labels(g: &DiversityGraph<u32>, ids: &[NodeId]) -> Vec<String> {
        ids.iter().map(|&id| g.label_of(id).to_string()).collect()
    }

    #[test]
    fn path_middle() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(labels(&g, &cut_points(&g).unwrap()), ["n1"]);
        assert_eq!(blocks(&g).blocks.len(), 2);
    }

    #[test]
    fn triangle_has_none() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(cut_points(&g).unwrap().is_empty());
        assert_eq!(blocks(&g).blocks, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn bowtie() {
        let g = graph(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        let cps = cut_points(&g).unwrap();
        assert_eq!(labels(&g, &cps), ["n2"]);
        assert_eq!(g.without(&cps).connected_components().len(), 2);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = graph(2, &[]);
        assert!(matches!(cut_points(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn matches_removal_definition() {
        for seed in 0..60 {
            let g = crate::fixtures::random_graph::<u32>(12, 0.2, seed);
            for comp in g.connected_components() {
                let cps = cut_points(&comp).unwrap();
                for i in 0..comp.len() {
                    let id = comp.node_id(i);
                    let splits = comp.without(&[id]).connected_components().len() > 1;
                    assert_eq!(cps.contains(&id), splits);
                }
            }
        }
    }
}
