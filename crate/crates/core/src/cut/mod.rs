//! Cut-point decomposition.
//!
//! After removing dominated nodes, a component with articulation points is
//! split along them into a tree of small pieces. Each piece is solved
//! under every in/out combination of the cut points around it and the
//! results are merged bottom-up with `⊕` and `⊗`.

mod blocks;
mod compress;
mod cptree;

pub use blocks::cut_points;
pub use compress::compress;
pub use cptree::{cp_search, cptree_construct, CpTreeNode};

use crate::algebra::{oplus, otimes};
use crate::astar::div_astar_in;
use crate::dp::widen;
use crate::error::Result;
use crate::graph::DiversityGraph;
use crate::score::Score;
use crate::solver::SearchContext;
use crate::table::SolutionTable;

/// Optimal table for every size up to `k`.
pub fn div_cut<S: Score>(g: &DiversityGraph<S>, k: usize) -> SolutionTable<S> {
    div_cut_in(g, k, &mut SearchContext::default()).expect("unlimited budget cannot fail")
}

/// [`div_cut`] under a budget, with statistics.
pub fn div_cut_in<S: Score>(g: &DiversityGraph<S>, k: usize, ctx: &mut SearchContext<S>) -> Result<SolutionTable<S>> {
    let mut acc = SolutionTable::new(k);
    for comp in g.connected_components() {
        let t = component(&comp, k, ctx)?;
        acc = oplus(&acc, &t)?;
    }
    Ok(acc)
}

fn component<S: Score>(g: &DiversityGraph<S>, k: usize, ctx: &mut SearchContext<S>) -> Result<SolutionTable<S>> {
    let small = |g: &DiversityGraph<S>, ctx: &mut SearchContext<S>| {
        div_astar_in(g, k.min(g.len()), ctx).map(|t| widen(&t, k))
    };
    if g.len() <= 2 {
        return small(g, ctx);
    }
    let c = compress(g);
    if c.len() < g.len() && !c.is_connected() {
        return div_cut_in(&c, k, ctx);
    }
    let cps = cut_points(&c)?;
    if cps.is_empty() {
        return small(&c, ctx);
    }
    let mut root = cptree_construct(&c, &cps)?;
    cp_search(&c, &mut root, k, ctx)?;
    let out = otimes(root.result0.as_ref().expect("searched"), root.result1.as_ref().expect("searched"))?;
    ctx.stats.release_tables(2 * root.size());
    Ok(out)
}
