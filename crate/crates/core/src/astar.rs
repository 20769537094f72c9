//! Best-first search for the per-size optimal table of one graph.
//!
//! Partial solutions grow in score order: a child of an entry adds one node
//! that comes after the entry's last node and is not adjacent to any member.
//! Entries are ranked by an admissible ceiling (the entry's score plus the
//! best compatible later nodes), and the heap is reused while the target
//! size drops from `k` to 1; between sizes every surviving ceiling is
//! recomputed and the heap rebuilt.
//!
//! For target size `k'` the search stops once the best ceiling falls below
//! the best size-`k'` score found. A ceiling that cannot be reached with
//! `k'` compatible nodes ranks below every reachable one, so sizes with no
//! independent set are settled without draining the heap.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::graph::{DiversityGraph, NodeId};
use crate::score::{cmp_scores, Score};
use crate::solver::{PopRecord, SearchContext};
use crate::table::{Solution, SolutionTable};

const NIL: u32 = u32::MAX;
const TIME_CHECK_INTERVAL: u64 = 256;

/// Materialized view of one search entry.
#[derive(Clone, Debug, PartialEq)]
pub struct AStarEntry<S> {
    pub solution: Vec<NodeId>,
    /// One-based position of the last member in score order; 0 when empty.
    pub pos: usize,
    pub score: S,
    pub bound: S,
}

impl<S: Score> AStarEntry<S> {
    pub fn root() -> Self {
        Self {
            solution: Vec::new(),
            pos: 0,
            score: S::zero(),
            bound: S::zero(),
        }
    }
}

#[derive(Clone, Copy)]
struct Link {
    parent: u32,
    node: u32,
}

const REACHABLE: u32 = 1 << 31;

/// Heap slot, kept small because the heap can hold very many of them. An
/// entry is its parent (an expanded entry in the arena) plus one node; the
/// score is recovered from the members when needed.
#[derive(Clone, Copy, Debug)]
struct Item<S> {
    bound: S,
    parent: u32,
    node: u32,
    /// Solution size, with [`REACHABLE`] set when enough compatible nodes
    /// remain to reach the target size.
    tag: u32,
}

impl<S: Score> Item<S> {
    fn new(bound: S, parent: u32, node: u32, size: usize, reachable: bool) -> Self {
        let size = size as u32;
        Self {
            bound,
            parent,
            node,
            tag: if reachable { size | REACHABLE } else { size },
        }
    }

    fn root() -> Self {
        Self::new(S::zero(), NIL, NIL, 0, true)
    }

    #[inline]
    fn size(&self) -> usize {
        (self.tag & !REACHABLE) as usize
    }

    #[inline]
    fn reachable(&self) -> bool {
        self.tag & REACHABLE != 0
    }

    /// One-based position of the newest member; 0 for the root.
    #[inline]
    fn pos(&self) -> usize {
        self.node.wrapping_add(1) as usize
    }

    /// Generation order: parents are expanded in arena order and each one
    /// emits its children by ascending node. The root sorts first.
    #[inline]
    fn birth(&self) -> (u32, u32) {
        (self.parent.wrapping_add(1), self.node.wrapping_add(1))
    }
}

impl<S: Score> PartialEq for Item<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<S: Score> Eq for Item<S> {}

impl<S: Score> PartialOrd for Item<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Score> Ord for Item<S> {
    /// Reachable first, then higher ceiling, then larger size, then the
    /// entry generated first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.reachable()
            .cmp(&other.reachable())
            .then_with(|| cmp_scores(self.bound, other.bound))
            .then_with(|| self.size().cmp(&other.size()))
            .then_with(|| other.birth().cmp(&self.birth()))
    }
}

/// Max-heap of partial solutions keyed by their ceiling.
///
/// Expanded entries are kept as parent links in an append-only arena, so a
/// waiting entry costs a constant amount of memory regardless of its size.
#[derive(Clone)]
pub struct SearchHeap<S> {
    arena: Vec<Link>,
    heap: BinaryHeap<Item<S>>,
}

impl<S: Score> SearchHeap<S> {
    /// A heap holding only the empty partial solution.
    pub fn seeded() -> Self {
        let mut heap = BinaryHeap::new();
        heap.push(Item::root());
        Self {
            arena: Vec::new(),
            heap,
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    /// Current entries in heap-internal order.
    pub fn entries(&self, g: &DiversityGraph<S>) -> Vec<AStarEntry<S>> {
        let mut locals = Vec::new();
        self.heap
            .iter()
            .map(|it| {
                self.members(it, &mut locals);
                let mut solution: Vec<NodeId> = locals.iter().map(|&l| g.node_id(l)).collect();
                solution.sort_unstable();
                AStarEntry {
                    pos: it.pos(),
                    score: g.total_score(&solution),
                    solution,
                    bound: it.bound,
                }
            })
            .collect()
    }

    fn members(&self, item: &Item<S>, out: &mut Vec<usize>) {
        out.clear();
        if item.node == NIL {
            return;
        }
        out.push(item.node as usize);
        let mut link = item.parent;
        while link != NIL {
            let l = self.arena[link as usize];
            out.push(l.node as usize);
            link = l.parent;
        }
    }

    /// Stores a popped entry so its children can refer to it.
    fn expand(&mut self, item: &Item<S>) -> Result<u32> {
        if item.node == NIL {
            return Ok(NIL);
        }
        if self.arena.len() >= NIL as usize {
            return Err(crate::Error::HeapLimit { limit: self.arena.len() });
        }
        self.arena.push(Link {
            parent: item.parent,
            node: item.node,
        });
        Ok(self.arena.len() as u32 - 1)
    }
}

/// Graph data precomputed for the search.
struct Prepared<'g, S> {
    g: &'g DiversityGraph<S>,
    closed: Vec<FixedBitSet>,
}

impl<'g, S: Score> Prepared<'g, S> {
    fn new(g: &'g DiversityGraph<S>) -> Self {
        let n = g.len();
        let closed = (0..n)
            .map(|i| {
                let mut b = FixedBitSet::with_capacity(n);
                b.insert(i);
                for &j in g.neighbors(i) {
                    b.insert(j as usize);
                }
                b
            })
            .collect();
        Self { g, closed }
    }

    fn score_of(&self, members: &[usize]) -> S {
        members.iter().fold(S::zero(), |acc, &m| acc + self.g.score(m))
    }

    fn blocked_by(&self, members: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.g.len());
        for &m in members {
            b.union_with(&self.closed[m]);
        }
        b
    }

    /// Running sums of the `need` best nodes at positions `>= start` that are
    /// outside `blocked` and, if given, not in the closed neighborhood of
    /// `extra`. `out[t]` is the sum of the first `t + 1` such nodes; fewer
    /// than `need` entries means not enough nodes remain.
    fn extension(&self, blocked: &FixedBitSet, extra: Option<usize>, start: usize, need: usize, out: &mut Vec<S>) {
        out.clear();
        if need == 0 {
            return;
        }
        let scores = self.g.scores();
        let extra = extra.map(|e| &self.closed[e]);
        let mut sum = S::zero();
        for j in start..self.g.len() {
            if blocked.contains(j) || extra.is_some_and(|e| e.contains(j)) {
                continue;
            }
            sum += scores[j];
            out.push(sum);
            if out.len() == need {
                break;
            }
        }
    }

    /// Whether an entry of `size` and `score` with extension sums `ext` can
    /// still be popped for some target size up to `kprime`: some reachable
    /// size must have a ceiling no lower than the best found so far.
    fn useful(table: &SolutionTable<S>, size: usize, score: S, ext: &[S], kprime: usize) -> bool {
        (size..=kprime.min(size + ext.len())).any(|j| {
            let ceiling = if j == size { score } else { score + ext[j - size - 1] };
            table.score(j).map_or(true, |best| ceiling >= best)
        })
    }

    /// Recomputes the ceiling of `item` for `kprime`; returns false when
    /// the entry can no longer be popped in this or any later phase.
    fn bound_item(
        &self,
        heap: &SearchHeap<S>,
        table: &SolutionTable<S>,
        item: &mut Item<S>,
        kprime: usize,
        members: &mut Vec<usize>,
        ext: &mut Vec<S>,
    ) -> bool {
        let size = item.size();
        if size > kprime {
            return false;
        }
        heap.members(item, members);
        let score = self.score_of(members);
        let blocked = self.blocked_by(members);
        let need = kprime - size;
        self.extension(&blocked, None, item.pos(), need, ext);
        let bound = score + ext.last().copied().unwrap_or_else(S::zero);
        *item = Item::new(bound, item.parent, item.node, size, ext.len() == need);
        Self::useful(table, size, score, ext, kprime)
    }

    /// Recomputes every ceiling for `kprime` and rebuilds the heap, dropping
    /// entries that can serve no remaining size.
    fn refresh(&self, heap: &mut SearchHeap<S>, table: &SolutionTable<S>, kprime: usize) {
        let mut items = std::mem::take(&mut heap.heap).into_vec();
        let (mut members, mut ext) = (Vec::new(), Vec::new());
        items.retain_mut(|it| self.bound_item(heap, table, it, kprime, &mut members, &mut ext));
        heap.heap = BinaryHeap::from(items);
    }

    fn search(
        &self,
        heap: &mut SearchHeap<S>,
        table: &mut SolutionTable<S>,
        kprime: usize,
        ctx: &mut SearchContext<S>,
    ) -> Result<()> {
        let n = self.g.len();
        let scores = self.g.scores();
        let mut members = Vec::new();
        let mut ext = Vec::new();
        let mut pops_here = 0u64;
        loop {
            let Some(top) = heap.heap.peek() else { break };
            if !top.reachable() {
                break;
            }
            if let Some(best) = table.score(kprime) {
                if top.bound < best {
                    break;
                }
            }
            let e = heap.heap.pop().expect("peeked");
            ctx.stats.pops += 1;
            pops_here += 1;
            if pops_here % TIME_CHECK_INTERVAL == 0 {
                ctx.budget.check_time()?;
            }
            heap.members(&e, &mut members);
            let e_score = self.score_of(&members);
            if let Some(trace) = ctx.trace.as_mut() {
                let mut ids: Vec<NodeId> = members.iter().map(|&l| self.g.node_id(l)).collect();
                ids.sort_unstable();
                trace.push(PopRecord {
                    kprime,
                    solution: ids,
                    score: e_score,
                    bound: e.bound,
                });
            }
            let size = e.size();
            if size >= kprime {
                continue;
            }
            let blocked = self.blocked_by(&members);
            let parent = heap.expand(&e)?;
            let child_size = size + 1;
            let need = kprime - child_size;
            for i in e.pos()..n {
                if blocked.contains(i) {
                    continue;
                }
                let child_score = e_score + scores[i];
                if table.improves(child_size, child_score) {
                    let mut ids: Vec<NodeId> = members.iter().map(|&l| self.g.node_id(l)).collect();
                    ids.push(self.g.node_id(i));
                    table.offer(Solution::new(ids, child_score));
                }
                self.extension(&blocked, Some(i), i + 1, need, &mut ext);
                if !Self::useful(table, child_size, child_score, &ext, kprime) {
                    continue;
                }
                let bound = child_score + ext.last().copied().unwrap_or_else(S::zero);
                heap.heap.push(Item::new(bound, parent, i as u32, child_size, ext.len() == need));
                ctx.stats.pushes += 1;
            }
            ctx.stats.observe_heap(heap.len());
            ctx.budget.check_heap(heap.len())?;
        }
        Ok(())
    }
}

/// Ceiling for extending `e` to at most `kprime` members: its score plus the
/// best `kprime - |e|` nodes after `e.pos` that are not adjacent to it.
pub fn astar_bound<S: Score>(g: &DiversityGraph<S>, e: &AStarEntry<S>, kprime: usize) -> Result<S> {
    if kprime <= e.solution.len() {
        return Ok(e.score);
    }
    let locals = e
        .solution
        .iter()
        .map(|&id| g.local_index(id).ok_or_else(|| crate::Error::UnknownNode(g.label_of(id).to_string())))
        .collect::<Result<Vec<_>>>()?;
    let prep = Prepared::new(g);
    let blocked = prep.blocked_by(&locals);
    let mut ext = Vec::new();
    prep.extension(&blocked, None, e.pos, kprime - e.solution.len(), &mut ext);
    Ok(e.score + ext.last().copied().unwrap_or_else(S::zero))
}

/// Runs one search phase for target size `kprime`, expanding entries from
/// `heap` and recording every generated partial solution in `table`.
pub fn astar_search<S: Score>(
    g: &DiversityGraph<S>,
    heap: &mut SearchHeap<S>,
    table: &mut SolutionTable<S>,
    kprime: usize,
    ctx: &mut SearchContext<S>,
) -> Result<()> {
    Prepared::new(g).search(heap, table, kprime, ctx)
}

/// Recomputes all ceilings in `heap` for target size `kprime`, dropping
/// entries that cannot beat `table` at any size up to `kprime`.
pub fn refresh_bounds<S: Score>(
    g: &DiversityGraph<S>,
    heap: &mut SearchHeap<S>,
    table: &SolutionTable<S>,
    kprime: usize,
) {
    Prepared::new(g).refresh(heap, table, kprime)
}

/// Optimal table for every size up to `k`.
pub fn div_astar<S: Score>(g: &DiversityGraph<S>, k: usize) -> SolutionTable<S> {
    div_astar_in(g, k, &mut SearchContext::default()).expect("unlimited budget cannot fail")
}

/// [`div_astar`] under a budget, with statistics.
pub fn div_astar_in<S: Score>(
    g: &DiversityGraph<S>,
    k: usize,
    ctx: &mut SearchContext<S>,
) -> Result<SolutionTable<S>> {
    let mut table = SolutionTable::new(k);
    let top = k.min(g.len());
    if top == 0 {
        return Ok(table);
    }
    ctx.stats.astar_calls += 1;
    ctx.stats.retain_tables(1);
    let prep = Prepared::new(g);
    let mut heap = SearchHeap::seeded();
    let mut outcome = Ok(());
    for kprime in (1..=top).rev() {
        if kprime < top {
            prep.refresh(&mut heap, &table, kprime);
        }
        outcome = prep.search(&mut heap, &mut table, kprime, ctx);
        if outcome.is_err() {
            break;
        }
    }
    ctx.stats.release_tables(1);
    outcome.map(|()| table)
}
