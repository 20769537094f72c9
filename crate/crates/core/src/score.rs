//! Scalar abstraction for result scores.
//!
//! Every solver is generic over the score type. Floating point scores come
//! from text retrieval; integer and rational scores make fixtures exact.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Mul, Sub};

use num_traits::{FromPrimitive, ToPrimitive, Zero};

/// A non-negative, totally comparable-in-practice score.
///
/// `PartialOrd` is enough because construction rejects NaN and negative
/// values, so every score that reaches a solver is comparable.
pub trait Score:
    Copy
    + PartialOrd
    + Zero
    + Add<Output = Self>
    + AddAssign
    + Sub<Output = Self>
    + Mul<Output = Self>
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// `count` copies of `self` added together.
    fn times(self, count: usize) -> Self {
        match Self::from_usize(count) {
            Some(c) => c * self,
            None => (0..count).fold(Self::zero(), |acc, _| acc + self),
        }
    }

    /// True iff the value is a valid score (comparable and `>= 0`).
    fn is_valid_score(self) -> bool {
        self >= Self::zero()
    }
}

impl<T> Score for T where
    T: Copy
        + PartialOrd
        + Zero
        + Add<Output = T>
        + AddAssign
        + Sub<Output = T>
        + Mul<Output = T>
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Total order over validated scores.
#[inline]
pub(crate) fn cmp_scores<S: Score>(a: S, b: S) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}
