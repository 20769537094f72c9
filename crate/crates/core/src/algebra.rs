//! Combination operators over [`SolutionTable`]s.
//!
//! [`oplus`] merges tables computed over two node-disjoint, mutually
//! non-adjacent scopes by trying every split of each size between them.
//! [`otimes`] picks, per size, the better of two tables computed over the
//! same scope under different conditions.

use crate::error::{Error, Result};
use crate::score::Score;
use crate::table::SolutionTable;

/// Counts the work done by the operators; `pairs` is the number of
/// `(left, right)` entry pairs examined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AlgebraCounter {
    pub pairs: u64,
}

pub fn oplus<S: Score>(a: &SolutionTable<S>, b: &SolutionTable<S>) -> Result<SolutionTable<S>> {
    oplus_counted(a, b, &mut AlgebraCounter::default())
}

/// [`oplus`] that also accumulates the number of examined pairs.
///
/// Among splits reaching the same best score the one taking the fewest
/// nodes from `a` wins.
pub fn oplus_counted<S: Score>(
    a: &SolutionTable<S>,
    b: &SolutionTable<S>,
    counter: &mut AlgebraCounter,
) -> Result<SolutionTable<S>> {
    let k = same_capacity(a, b)?;
    let mut out = SolutionTable::new(k);
    for i in 1..=k {
        let mut best: Option<(usize, S)> = None;
        for j in 0..=i {
            counter.pairs += 1;
            let (Some(left), Some(right)) = (a.get(j), b.get(i - j)) else {
                continue;
            };
            let total = left.score + right.score;
            if best.map_or(true, |(_, s)| total > s) {
                best = Some((j, total));
            }
        }
        if let Some((j, _)) = best {
            let joined = a.get(j).unwrap().join(b.get(i - j).unwrap());
            out.set(i, Some(joined));
        }
    }
    Ok(out)
}

pub fn otimes<S: Score>(a: &SolutionTable<S>, b: &SolutionTable<S>) -> Result<SolutionTable<S>> {
    otimes_counted(a, b, &mut AlgebraCounter::default())
}

/// [`otimes`] with a work counter. Equal scores keep the entry of `a`.
pub fn otimes_counted<S: Score>(
    a: &SolutionTable<S>,
    b: &SolutionTable<S>,
    counter: &mut AlgebraCounter,
) -> Result<SolutionTable<S>> {
    let k = same_capacity(a, b)?;
    let mut out = SolutionTable::new(k);
    for i in 1..=k {
        counter.pairs += 1;
        let pick = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => Some(if y.score > x.score { y } else { x }),
            (Some(x), None) => Some(x),
            (None, Some(y)) => Some(y),
            (None, None) => None,
        };
        out.set(i, pick.cloned());
    }
    Ok(out)
}

fn same_capacity<S: Score>(a: &SolutionTable<S>, b: &SolutionTable<S>) -> Result<usize> {
    if a.capacity() != b.capacity() {
        return Err(Error::CapacityMismatch {
            left: a.capacity(),
            right: b.capacity(),
        });
    }
    Ok(a.capacity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeId;
    use crate::table::Solution;
    use proptest::prelude::*;

    fn sol(ids: &[u32], score: u32) -> Solution<u32> {
        Solution::new(ids.iter().map(|&i| NodeId(i)).collect(), score)
    }

    #[test]
    fn oplus_single_entries() {
        let a = SolutionTable::from_entries(2, vec![(1, sol(&[0], 5))]).unwrap();
        let b = SolutionTable::from_entries(2, vec![(1, sol(&[1], 7))]).unwrap();
        let c = oplus(&a, &b).unwrap();
        assert_eq!(c.scores(), vec![Some(0), Some(7), Some(12)]);
        assert_eq!(c.get(1).unwrap().nodes, vec![NodeId(1)]);
        assert_eq!(c.get(2).unwrap().nodes, vec![NodeId(0), NodeId(1)]);
    }

    #[test]
    fn oplus_with_empty_table_is_identity() {
        let a = SolutionTable::from_entries(3, vec![(1, sol(&[0], 5)), (2, sol(&[0, 2], 8))]).unwrap();
        let e = SolutionTable::new(3);
        assert_eq!(oplus(&a, &e).unwrap(), a);
        assert_eq!(oplus(&e, &a).unwrap(), a);
    }

    #[test]
    fn otimes_per_size_maximum() {
        let a = SolutionTable::from_entries(2, vec![(1, sol(&[0], 10))]).unwrap();
        let b = SolutionTable::from_entries(2, vec![(1, sol(&[1], 8)), (2, sol(&[1, 2], 14))]).unwrap();
        let c = otimes(&a, &b).unwrap();
        assert_eq!(c.scores(), vec![Some(0), Some(10), Some(14)]);
        assert_eq!(otimes(&a, &a).unwrap(), a);
        assert_eq!(otimes(&a, &SolutionTable::new(2)).unwrap(), a);
    }

    #[test]
    fn otimes_ties_keep_left() {
        let a = SolutionTable::from_entries(1, vec![(1, sol(&[0], 4))]).unwrap();
        let b = SolutionTable::from_entries(1, vec![(1, sol(&[1], 4))]).unwrap();
        assert_eq!(otimes(&a, &b).unwrap().get(1).unwrap().nodes, vec![NodeId(0)]);
    }

    #[test]
    fn capacity_mismatch_is_an_error() {
        let a = SolutionTable::<u32>::new(2);
        let b = SolutionTable::<u32>::new(3);
        assert!(matches!(oplus(&a, &b), Err(Error::CapacityMismatch { left: 2, right: 3 })));
        assert!(matches!(otimes(&a, &b), Err(Error::CapacityMismatch { .. })));
    }

    #[test]
    fn operator_costs() {
        let k = 6;
        let a = SolutionTable::<u32>::new(k);
        let mut c = AlgebraCounter::default();
        oplus_counted(&a, &a, &mut c).unwrap();
        assert_eq!(c.pairs, (k * (k + 3) / 2) as u64);
        let mut c = AlgebraCounter::default();
        otimes_counted(&a, &a, &mut c).unwrap();
        assert_eq!(c.pairs, k as u64);
    }

    /// Random table over a private id range so operands stay disjoint.
    fn table_strategy(k: usize, base: u32) -> impl Strategy<Value = SolutionTable<u32>> {
        proptest::collection::vec(proptest::option::of(0u32..50), k).prop_map(move |scores| {
            let mut entries = Vec::new();
            for (idx, s) in scores.into_iter().enumerate() {
                if let Some(s) = s {
                    let size = idx + 1;
                    let ids: Vec<u32> = (0..size as u32).map(|x| base + x).collect();
                    entries.push((size, sol(&ids, s)));
                }
            }
            SolutionTable::from_entries(k, entries).unwrap()
        })
    }

    proptest! {
        #[test]
        fn oplus_scores_commute_and_associate(
            a in table_strategy(5, 0),
            b in table_strategy(5, 100),
            c in table_strategy(5, 200),
        ) {
            prop_assert_eq!(oplus(&a, &b).unwrap().scores(), oplus(&b, &a).unwrap().scores());
            let left = oplus(&oplus(&a, &b).unwrap(), &c).unwrap();
            let right = oplus(&a, &oplus(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left.scores(), right.scores());
        }

        #[test]
        fn otimes_scores_commute_and_associate(
            a in table_strategy(5, 0),
            b in table_strategy(5, 100),
            c in table_strategy(5, 200),
        ) {
            prop_assert_eq!(otimes(&a, &b).unwrap().scores(), otimes(&b, &a).unwrap().scores());
            let left = otimes(&otimes(&a, &b).unwrap(), &c).unwrap();
            let right = otimes(&a, &otimes(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left.scores(), right.scores());
        }
    }
}
