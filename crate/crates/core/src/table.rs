//! Per-size best solutions.

use crate::error::{Error, Result};
use crate::graph::{DiversityGraph, NodeId};
use crate::score::{cmp_scores, Score};

/// A node set with its total score. Nodes are kept sorted ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<S> {
    pub nodes: Vec<NodeId>,
    pub score: S,
}

impl<S: Score> Solution<S> {
    pub fn empty() -> Self {
        Self {
            nodes: Vec::new(),
            score: S::zero(),
        }
    }

    pub fn new(mut nodes: Vec<NodeId>, score: S) -> Self {
        nodes.sort_unstable();
        Self { nodes, score }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Disjoint union of two solutions.
    pub fn join(&self, other: &Self) -> Self {
        let mut nodes = Vec::with_capacity(self.nodes.len() + other.nodes.len());
        nodes.extend_from_slice(&self.nodes);
        nodes.extend_from_slice(&other.nodes);
        nodes.sort_unstable();
        Self {
            nodes,
            score: self.score + other.score,
        }
    }

    pub fn labels<'g>(&self, g: &'g DiversityGraph<S>) -> Vec<&'g str> {
        self.nodes.iter().map(|&id| g.label_of(id)).collect()
    }
}

/// For every size `i` in `0..=k`, the best solution with exactly `i` nodes
/// found in some scope, or nothing when no such set exists there.
///
/// Entry 0 is the empty solution.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionTable<S> {
    entries: Vec<Option<Solution<S>>>,
}

impl<S: Score> SolutionTable<S> {
    /// A table with capacity `k` holding only the empty solution.
    pub fn new(k: usize) -> Self {
        let mut entries = vec![None; k + 1];
        entries[0] = Some(Solution::empty());
        Self { entries }
    }

    /// Builds a table from explicit entries; `entries[0]` is forced to the
    /// empty solution and sizes must match their position.
    pub fn from_entries(k: usize, entries: Vec<(usize, Solution<S>)>) -> Result<Self> {
        let mut t = Self::new(k);
        for (size, sol) in entries {
            if size > k || sol.len() != size {
                return Err(Error::InvalidInput(format!(
                    "entry of size {} placed at {size} in a table of capacity {k}",
                    sol.len()
                )));
            }
            if size > 0 {
                t.entries[size] = Some(sol);
            }
        }
        Ok(t)
    }

    /// Capacity `k`.
    #[inline]
    pub fn capacity(&self) -> usize {
        self.entries.len() - 1
    }

    #[inline]
    pub fn get(&self, size: usize) -> Option<&Solution<S>> {
        self.entries.get(size).and_then(Option::as_ref)
    }

    #[inline]
    pub fn score(&self, size: usize) -> Option<S> {
        self.get(size).map(|s| s.score)
    }

    /// Scores for sizes `0..=k`, `None` where absent.
    pub fn scores(&self) -> Vec<Option<S>> {
        self.entries.iter().map(|e| e.as_ref().map(|s| s.score)).collect()
    }

    /// Replaces the entry at the solution's size if it is absent or strictly
    /// worse. Returns whether the table changed.
    pub fn offer(&mut self, sol: Solution<S>) -> bool {
        let size = sol.len();
        if size == 0 || size > self.capacity() {
            return false;
        }
        if self.improves(size, sol.score) {
            self.entries[size] = Some(sol);
            true
        } else {
            false
        }
    }

    /// True iff a solution of `size` with `score` would replace the entry.
    #[inline]
    pub fn improves(&self, size: usize, score: S) -> bool {
        match &self.entries[size] {
            None => true,
            Some(cur) => score > cur.score,
        }
    }

    pub(crate) fn set(&mut self, size: usize, sol: Option<Solution<S>>) {
        debug_assert!(sol.as_ref().map_or(true, |s| s.len() == size));
        if size > 0 {
            self.entries[size] = sol;
        }
    }

    /// Largest size `i >= 1` with a present entry, or 0.
    pub fn max_feasible_size(&self) -> usize {
        (1..self.entries.len()).rev().find(|&i| self.entries[i].is_some()).unwrap_or(0)
    }

    /// The highest-scoring present entry with size `<= k`; ties go to the
    /// smaller size.
    pub fn best_within(&self, k: usize) -> &Solution<S> {
        let mut best = self.entries[0].as_ref().expect("entry 0 is always present");
        for e in self.entries.iter().take(k + 1).skip(1).flatten() {
            if cmp_scores(e.score, best.score).is_gt() {
                best = e;
            }
        }
        best
    }

    /// The highest-scoring present entry of the whole table.
    pub fn best(&self) -> &Solution<S> {
        self.best_within(self.capacity())
    }

    /// Present entries as `(size, solution)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Solution<S>)> {
        self.entries.iter().enumerate().filter_map(|(i, e)| e.as_ref().map(|s| (i, s)))
    }

    /// Number of present entries.
    pub fn present(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }

    /// A new table where every size-`i` entry gains `node`, becoming size
    /// `i + 1`. Entries that would exceed the capacity are dropped; entry 0
    /// stays empty.
    pub fn with_forced(&self, node: NodeId, score: S) -> Self {
        let k = self.capacity();
        let mut out = Self::new(k);
        let single = Solution::new(vec![node], score);
        for i in 0..k {
            if let Some(sol) = &self.entries[i] {
                out.entries[i + 1] = Some(single.join(sol));
            }
        }
        out
    }

    /// Checks the table invariants against `g`: sizes, independence, and
    /// exact score sums.
    pub fn validate(&self, g: &DiversityGraph<S>) -> Result<()>
    where
        S: PartialEq,
    {
        for (size, sol) in self.iter() {
            if sol.len() != size {
                return Err(Error::InvalidInput(format!("entry {size} has {} nodes", sol.len())));
            }
            if !g.is_independent(&sol.nodes)? {
                return Err(Error::InvalidInput(format!("entry {size} is not independent")));
            }
            if g.total_score(&sol.nodes) != sol.score {
                return Err(Error::InvalidInput(format!("entry {size} has a wrong score")));
            }
        }
        Ok(())
    }
}
