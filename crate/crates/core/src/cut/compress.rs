//! Removal of dominated nodes.
//!
//! A node whose neighbor scores at least as much and has a closed
//! neighborhood inside the node's own can be swapped for that neighbor in
//! any independent set without losing score, so dropping it keeps the best
//! score of every size.

use fixedbitset::FixedBitSet;

use crate::graph::DiversityGraph;
use crate::score::Score;

/// Repeatedly removes dominated nodes, weakest first, until none is left.
pub fn compress<S: Score>(g: &DiversityGraph<S>) -> DiversityGraph<S> {
    let n = g.len();
    let mut alive = vec![true; n];
    let mut removed_any = false;
    let mut changed = true;
    let mut closed = FixedBitSet::with_capacity(n);
    while changed {
        changed = false;
        for i in (0..n).rev() {
            if !alive[i] {
                continue;
            }
            closed.clear();
            closed.insert(i);
            for &j in g.neighbors(i) {
                closed.insert(j as usize);
            }
            let dominated = g.neighbors(i).iter().map(|&j| j as usize).any(|j| {
                alive[j]
                    && g.score(j) >= g.score(i)
                    && g.neighbors(j).iter().all(|&w| !alive[w as usize] || closed.contains(w as usize))
            });
            if dominated {
                alive[i] = false;
                removed_any = true;
                changed = true;
            }
        }
    }
    if !removed_any {
        return g.clone();
    }
    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    g.induced_local(&keep)
}
