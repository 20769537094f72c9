//! Diversity graph: one node per scored result, an edge between every pair of
//! similar results.
//!
//! Nodes of a graph are always held in non-increasing score order (ties by
//! ascending id). A graph built from results owns a shared *universe* that
//! maps [`NodeId`]s to ids and scores; subgraphs share that universe, so a
//! [`NodeId`] means the same result in every subgraph derived from one build.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::score::{cmp_scores, Score};

/// Identity of a result within one graph universe.
///
/// Ids are assigned in score order, so ascending `NodeId` is non-increasing
/// score order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One search result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoredResult<S> {
    pub id: String,
    pub score: S,
}

impl<S> ScoredResult<S> {
    pub fn new(id: impl Into<String>, score: S) -> Self {
        Self {
            id: id.into(),
            score,
        }
    }
}

#[derive(Debug)]
struct Universe<S> {
    labels: Vec<String>,
    scores: Vec<S>,
    lookup: HashMap<String, NodeId>,
}

/// Undirected similarity graph over scored results.
#[derive(Clone, Debug)]
pub struct DiversityGraph<S> {
    universe: Arc<Universe<S>>,
    ids: Vec<NodeId>,
    scores: Vec<S>,
    adj: Vec<Vec<u32>>,
}

/// Builds the diversity graph of `results`: an edge joins two distinct
/// results iff `similar` holds for them.
///
/// The predicate is evaluated once per unordered pair.
pub fn build_diversity_graph<S, F>(
    results: Vec<ScoredResult<S>>,
    mut similar: F,
) -> Result<DiversityGraph<S>>
where
    S: Score,
    F: FnMut(&ScoredResult<S>, &ScoredResult<S>) -> bool,
{
    let mut edges = Vec::new();
    for i in 0..results.len() {
        for j in (i + 1)..results.len() {
            if similar(&results[i], &results[j]) {
                edges.push((i, j));
            }
        }
    }
    DiversityGraph::from_edges(results, edges)
}

impl<S: Score> DiversityGraph<S> {
    pub fn empty() -> Self {
        Self {
            universe: Arc::new(Universe {
                labels: Vec::new(),
                scores: Vec::new(),
                lookup: HashMap::new(),
            }),
            ids: Vec::new(),
            scores: Vec::new(),
            adj: Vec::new(),
        }
    }

    /// Builds a graph from results and edges given as index pairs into
    /// `results` (input order). Duplicate edges are merged.
    pub fn from_edges<I>(results: Vec<ScoredResult<S>>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = results.len();
        let mut lookup = HashMap::with_capacity(n);
        for (i, r) in results.iter().enumerate() {
            if !r.score.is_valid_score() {
                return Err(Error::InvalidScore(r.id.clone()));
            }
            if lookup.insert(r.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(r.id.clone()));
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            cmp_scores(results[b].score, results[a].score).then_with(|| results[a].id.cmp(&results[b].id))
        });
        let mut rank = vec![0u32; n];
        for (pos, &orig) in order.iter().enumerate() {
            rank[orig] = pos as u32;
        }

        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownNode(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(Error::SelfLoop(results[a].id.clone()));
            }
            let (ra, rb) = (rank[a], rank[b]);
            adj[ra as usize].push(rb);
            adj[rb as usize].push(ra);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }

        let mut slots: Vec<Option<ScoredResult<S>>> = results.into_iter().map(Some).collect();
        let mut labels = Vec::with_capacity(n);
        let mut scores = Vec::with_capacity(n);
        for &orig in &order {
            let r = slots[orig].take().expect("each slot taken once");
            labels.push(r.id);
            scores.push(r.score);
        }
        let lookup = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), NodeId(i as u32)))
            .collect();

        Ok(Self {
            universe: Arc::new(Universe {
                labels,
                scores: scores.clone(),
                lookup,
            }),
            ids: (0..n as u32).map(NodeId).collect(),
            scores,
            adj,
        })
    }

    /// Builds a graph from results and edges named by result id.
    pub fn from_labeled_edges<'a, I>(results: Vec<ScoredResult<S>>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let index: HashMap<&str, usize> = results
            .iter()
            .enumerate()
            .map(|(i, r)| (r.id.as_str(), i))
            .collect();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let ia = *index.get(a).ok_or_else(|| Error::UnknownNode(a.to_string()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownNode(b.to_string()))?;
            pairs.push((ia, ib));
        }
        drop(index);
        Self::from_edges(results, pairs)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Node ids in score order.
    #[inline]
    pub fn node_ids(&self) -> &[NodeId] {
        &self.ids
    }

    /// Scores in node order (non-increasing).
    #[inline]
    pub fn scores(&self) -> &[S] {
        &self.scores
    }

    #[inline]
    pub fn node_id(&self, local: usize) -> NodeId {
        self.ids[local]
    }

    #[inline]
    pub fn score(&self, local: usize) -> S {
        self.scores[local]
    }

    pub fn label(&self, local: usize) -> &str {
        self.label_of(self.ids[local])
    }

    /// Neighbors of a node, as ascending local indices.
    #[inline]
    pub fn neighbors(&self, local: usize) -> &[u32] {
        &self.adj[local]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&(b as u32)).is_ok()
    }

    /// Local position of `id`, if it belongs to this graph.
    pub fn local_index(&self, id: NodeId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.local_index(id).is_some()
    }

    /// Looks up a result id in the shared universe.
    pub fn id_of(&self, label: &str) -> Option<NodeId> {
        self.universe.lookup.get(label).copied()
    }

    pub fn label_of(&self, id: NodeId) -> &str {
        &self.universe.labels[id.index()]
    }

    pub fn score_of(&self, id: NodeId) -> S {
        self.universe.scores[id.index()]
    }

    /// Resolves ids to labels, failing on the first unknown one.
    pub fn ids_of<'a, I>(&self, labels: I) -> Result<Vec<NodeId>>
    where
        I: IntoIterator<Item = &'a str>,
    {
        labels
            .into_iter()
            .map(|l| self.id_of(l).ok_or_else(|| Error::UnknownNode(l.to_string())))
            .collect()
    }

    pub fn neighbor_ids(&self, local: usize) -> Vec<NodeId> {
        self.adj[local].iter().map(|&j| self.ids[j as usize]).collect()
    }

    /// Every edge once, as `(smaller, larger)` id pairs in ascending order.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if (j as usize) > i {
                    out.push((self.ids[i], self.ids[j as usize]));
                }
            }
        }
        out
    }

    /// The results of this graph in node order.
    pub fn results(&self) -> Vec<ScoredResult<S>> {
        (0..self.len())
            .map(|i| ScoredResult::new(self.label(i), self.scores[i]))
            .collect()
    }

    /// True iff no two members of `nodes` are adjacent.
    pub fn is_independent(&self, nodes: &[NodeId]) -> Result<bool> {
        let locals = self.to_locals(nodes)?;
        for (x, &a) in locals.iter().enumerate() {
            for &b in &locals[x + 1..] {
                if self.adjacent(a, b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Induced subgraph on `keep`.
    pub fn induced_subgraph(&self, keep: &[NodeId]) -> Result<Self> {
        let mut locals = self.to_locals(keep)?;
        locals.sort_unstable();
        locals.dedup();
        Ok(self.induced_local(&locals))
    }

    /// Induced subgraph without the listed ids; ids not in the graph are
    /// ignored.
    pub fn without(&self, drop: &[NodeId]) -> Self {
        if drop.is_empty() {
            return self.clone();
        }
        let mut removed = vec![false; self.len()];
        for &id in drop {
            if let Some(l) = self.local_index(id) {
                removed[l] = true;
            }
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&i| !removed[i]).collect();
        self.induced_local(&keep)
    }

    /// Induced subgraph on ascending local indices.
    pub(crate) fn induced_local(&self, keep: &[usize]) -> Self {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut remap = vec![u32::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new as u32;
        }
        let adj = keep
            .iter()
            .map(|&old| {
                self.adj[old]
                    .iter()
                    .filter_map(|&j| {
                        let m = remap[j as usize];
                        (m != u32::MAX).then_some(m)
                    })
                    .collect()
            })
            .collect();
        Self {
            universe: Arc::clone(&self.universe),
            ids: keep.iter().map(|&i| self.ids[i]).collect(),
            scores: keep.iter().map(|&i| self.scores[i]).collect(),
            adj,
        }
    }

    /// Connected components, ordered by their highest-scored node.
    pub fn connected_components(&self) -> Vec<Self> {
        self.component_locals()
            .into_iter()
            .map(|mut nodes| {
                nodes.sort_unstable();
                self.induced_local(&nodes)
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.len() <= 1 || self.component_locals().len() == 1
    }

    fn component_locals(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    let v = v as usize;
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    fn to_locals(&self, nodes: &[NodeId]) -> Result<Vec<usize>> {
        nodes
            .iter()
            .map(|&id| {
                self.local_index(id).ok_or_else(|| {
                    let name = self
                        .universe
                        .labels
                        .get(id.index())
                        .cloned()
                        .unwrap_or_else(|| format!("#{}", id.0));
                    Error::UnknownNode(name)
                })
            })
            .collect()
    }

    /// Sum of the scores of `nodes`.
    pub fn total_score(&self, nodes: &[NodeId]) -> S {
        nodes.iter().fold(S::zero(), |acc, &id| acc + self.score_of(id))
    }
}
