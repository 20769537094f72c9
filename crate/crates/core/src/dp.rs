//! Component decomposition: independent sets of a disconnected graph are
//! unions of independent sets of its components, so per-component tables
//! combine with [`oplus`].

use crate::algebra::oplus;
use crate::astar::div_astar_in;
use crate::error::Result;
use crate::graph::DiversityGraph;
use crate::score::Score;
use crate::solver::SearchContext;
use crate::table::SolutionTable;

/// Optimal table for every size up to `k`.
pub fn div_dp<S: Score>(g: &DiversityGraph<S>, k: usize) -> SolutionTable<S> {
    div_dp_in(g, k, &mut SearchContext::default()).expect("unlimited budget cannot fail")
}

/// [`div_dp`] under a budget, with statistics.
pub fn div_dp_in<S: Score>(g: &DiversityGraph<S>, k: usize, ctx: &mut SearchContext<S>) -> Result<SolutionTable<S>> {
    let mut comps = g.connected_components();
    // Largest first so an exhausted budget fails early.
    comps.sort_by(|a, b| b.len().cmp(&a.len()));
    let mut acc = SolutionTable::new(k);
    ctx.stats.retain_tables(1);
    for c in &comps {
        let kc = k.min(c.len());
        let part = div_astar_in(c, kc, ctx);
        let part = match part {
            Ok(t) => widen(&t, k),
            Err(e) => {
                ctx.stats.release_tables(1);
                return Err(e);
            }
        };
        acc = oplus(&acc, &part)?;
    }
    ctx.stats.release_tables(1);
    Ok(acc)
}

/// Copies `t` into a table of capacity `k >= t.capacity()`.
pub(crate) fn widen<S: Score>(t: &SolutionTable<S>, k: usize) -> SolutionTable<S> {
    if t.capacity() == k {
        return t.clone();
    }
    let mut out = SolutionTable::new(k);
    for (size, sol) in t.iter() {
        out.set(size, Some(sol.clone()));
    }
    out
}
