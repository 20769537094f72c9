//! Cut-point trees and the conditioned search over them.

use crate::algebra::{oplus, otimes};
use crate::cut::blocks::blocks;
use crate::cut::div_cut_in;
use crate::error::{Error, Result};
use crate::graph::{DiversityGraph, NodeId};
use crate::score::Score;
use crate::solver::SearchContext;
use crate::table::SolutionTable;

/// One cut vertex of the tree with the parts of the graph it owns.
///
/// `entry_graph` lies between this cut point and its parent's; `left_graph`
/// hangs off this cut point and holds no tree cut point. Together with the
/// cut point and the subnodes' scopes they partition the node's scope.
#[derive(Clone, Debug)]
pub struct CpTreeNode<S> {
    pub cut_point: NodeId,
    pub entry_graph: DiversityGraph<S>,
    pub left_graph: DiversityGraph<S>,
    pub subnodes: Vec<CpTreeNode<S>>,
    /// Best sets of the scope that avoid the cut point.
    pub result0: Option<SolutionTable<S>>,
    /// Best sets of the scope that contain the cut point.
    pub result1: Option<SolutionTable<S>>,
}

impl<S: Score> CpTreeNode<S> {
    /// Number of tree nodes in this subtree.
    pub fn size(&self) -> usize {
        1 + self.subnodes.iter().map(CpTreeNode::size).sum::<usize>()
    }

    /// Every node of the scope, ascending.
    pub fn scope(&self) -> Vec<NodeId> {
        let mut out = vec![self.cut_point];
        out.extend_from_slice(self.left_graph.node_ids());
        for s in &self.subnodes {
            out.extend_from_slice(s.entry_graph.node_ids());
            out.extend(s.scope());
        }
        out.sort_unstable();
        out
    }

    /// `result0 ⊗ result1` once searched.
    pub fn result(&self) -> Option<SolutionTable<S>> {
        let (a, b) = (self.result0.as_ref()?, self.result1.as_ref()?);
        otimes(a, b).ok()
    }
}

struct Builder<'g, S> {
    g: &'g DiversityGraph<S>,
    blocks: Vec<Vec<usize>>,
    /// Blocks containing each node.
    member_of: Vec<Vec<usize>>,
    is_cut: Vec<bool>,
}

impl<S: Score> Builder<'_, S> {
    fn child_cuts(&self, block: usize, parent: usize) -> Vec<usize> {
        self.blocks[block].iter().copied().filter(|&v| v != parent && self.is_cut[v]).collect()
    }

    fn child_blocks(&self, cut: usize, parent_block: Option<usize>) -> Vec<usize> {
        self.member_of[cut].iter().copied().filter(|&b| Some(b) != parent_block).collect()
    }

    /// Nodes hanging below `cut` when entered from `parent_block`,
    /// excluding `cut` itself.
    fn below_cut(&self, cut: usize, parent_block: usize, out: &mut Vec<usize>) {
        for b in self.child_blocks(cut, Some(parent_block)) {
            self.below_block(b, cut, out);
        }
    }

    /// Nodes of `block` and everything below it, excluding `parent`.
    fn below_block(&self, block: usize, parent: usize, out: &mut Vec<usize>) {
        out.extend(self.blocks[block].iter().copied().filter(|&v| v != parent));
        for d in self.child_cuts(block, parent) {
            self.below_cut(d, block, out);
        }
    }

    fn graph(&self, mut locals: Vec<usize>) -> DiversityGraph<S> {
        locals.sort_unstable();
        locals.dedup();
        self.g.induced_local(&locals)
    }

    fn node(&self, cut: usize, parent_block: Option<usize>, entry: Vec<usize>) -> CpTreeNode<S> {
        let mut left = Vec::new();
        let mut subnodes = Vec::new();
        for b in self.child_blocks(cut, parent_block) {
            let cuts = self.child_cuts(b, cut);
            if cuts.is_empty() {
                left.extend(self.blocks[b].iter().copied().filter(|&v| v != cut));
                continue;
            }
            // The cut with the largest hanging part stays in the tree; the
            // others are folded into the entry graph.
            let mut hanging: Vec<(usize, Vec<usize>)> = cuts
                .into_iter()
                .map(|d| {
                    let mut below = Vec::new();
                    self.below_cut(d, b, &mut below);
                    (d, below)
                })
                .collect();
            let keep = (0..hanging.len())
                .max_by(|&x, &y| hanging[x].1.len().cmp(&hanging[y].1.len()).then(y.cmp(&x)))
                .expect("at least one child cut");
            let (d, _) = hanging.swap_remove(keep);
            let mut child_entry: Vec<usize> =
                self.blocks[b].iter().copied().filter(|&v| v != cut && v != d).collect();
            for (_, below) in hanging {
                child_entry.extend(below);
            }
            subnodes.push(self.node(d, Some(b), child_entry));
        }
        CpTreeNode {
            cut_point: self.g.node_id(cut),
            entry_graph: self.graph(entry),
            left_graph: self.graph(left),
            subnodes,
            result0: None,
            result1: None,
        }
    }
}

/// Builds the cut-point tree of a connected graph from its articulation
/// points, rooted at the best-scored one.
pub fn cptree_construct<S: Score>(g: &DiversityGraph<S>, cps: &[NodeId]) -> Result<CpTreeNode<S>> {
    if cps.is_empty() {
        return Err(Error::NoCutPoints);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let b = blocks(g);
    let mut member_of = vec![Vec::new(); g.len()];
    for (i, block) in b.blocks.iter().enumerate() {
        for &v in block {
            member_of[v].push(i);
        }
    }
    let mut listed = vec![false; g.len()];
    for &id in cps {
        let l = g
            .local_index(id)
            .ok_or_else(|| Error::UnknownNode(g.label_of(id).to_string()))?;
        listed[l] = true;
    }
    if listed != b.is_cut {
        return Err(Error::InvalidInput("cut points do not match the graph".into()));
    }
    let is_cut = b.is_cut;
    let root = (0..g.len()).find(|&v| is_cut[v]).expect("cps is non-empty");
    let builder = Builder {
        g,
        blocks: b.blocks,
        member_of,
        is_cut,
    };
    Ok(builder.node(root, None, Vec::new()))
}

/// Fills `result0` and `result1` of every node under `o`; `g` is the graph
/// the tree was built from.
pub fn cp_search<S: Score>(
    g: &DiversityGraph<S>,
    o: &mut CpTreeNode<S>,
    k: usize,
    ctx: &mut SearchContext<S>,
) -> Result<()> {
    let c = o.cut_point;
    let c_local = g
        .local_index(c)
        .ok_or_else(|| Error::UnknownNode(g.label_of(c).to_string()))?;
    let c_adj = g.neighbor_ids(c_local);

    let mut acc = [
        div_cut_in(&o.left_graph, k, ctx)?,
        div_cut_in(&o.left_graph.without(&c_adj), k, ctx)?,
    ];
    ctx.stats.retain_tables(2);
    for child in &mut o.subnodes {
        cp_search(g, child, k, ctx)?;
        let d = child.cut_point;
        let d_adj = g.neighbor_ids(g.local_index(d).expect("subnode cut point lies in g"));
        let adjacent = c_adj.binary_search(&d).is_ok();
        let below = [
            child.result0.as_ref().expect("searched"),
            child.result1.as_ref().expect("searched"),
        ];
        for (x, slot) in acc.iter_mut().enumerate() {
            let base = if x == 1 { child.entry_graph.without(&c_adj) } else { child.entry_graph.clone() };
            let mut merged: Option<SolutionTable<S>> = None;
            for (y, tail) in below.iter().enumerate() {
                if x == 1 && y == 1 && adjacent {
                    continue;
                }
                let entry = if y == 1 { base.without(&d_adj) } else { base.clone() };
                ctx.stats.entry_graph_searches += 1;
                let t = oplus(&div_cut_in(&entry, k, ctx)?, tail)?;
                merged = Some(match merged {
                    None => t,
                    Some(m) => otimes(&m, &t)?,
                });
            }
            *slot = oplus(slot, &merged.expect("the excluded variant always runs"))?;
        }
    }
    let [without_c, with_c] = acc;
    o.result1 = Some(with_c.with_forced(c, g.score(c_local)));
    o.result0 = Some(without_c);
    Ok(())
}
