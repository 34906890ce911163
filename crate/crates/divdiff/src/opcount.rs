//! Arithmetic tallies for the instrumented reference paths and the closed-form
//! counts they are checked against.

use std::ops::{Add, AddAssign, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Counts of the four arithmetic operations.
///
/// The counting methods perform the operation and record it, so a tally is
/// threaded through a computation by `&mut` instead of living in shared state.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpCounts {
    pub additions: i64,
    pub subtractions: i64,
    pub multiplications: i64,
    pub divisions: i64,
}

impl OpCounts {
    pub const fn new(additions: i64, subtractions: i64, multiplications: i64, divisions: i64) -> Self {
        Self { additions, subtractions, multiplications, divisions }
    }

    pub fn total(&self) -> i64 {
        self.additions + self.subtractions + self.multiplications + self.divisions
    }

    pub fn add<T: Scalar>(&mut self, a: T, b: T) -> T {
        self.additions += 1;
        a + b
    }

    pub fn sub<T: Scalar>(&mut self, a: T, b: T) -> T {
        self.subtractions += 1;
        a - b
    }

    pub fn mul<T: Scalar>(&mut self, a: T, b: T) -> T {
        self.multiplications += 1;
        a * b
    }

    pub fn div<T: Scalar>(&mut self, a: T, b: T) -> T {
        self.divisions += 1;
        a / b
    }

    /// Sum of the terms, one addition per term after the first.
    pub fn sum<T: Scalar>(&mut self, terms: impl IntoIterator<Item = T>) -> T {
        let mut iter = terms.into_iter();
        let Some(first) = iter.next() else { return T::zero() };
        iter.fold(first, |acc, t| self.add(acc, t))
    }

    /// Product of the factors, one multiplication per factor after the first.
    pub fn product<T: Scalar>(&mut self, factors: impl IntoIterator<Item = T>) -> Option<T> {
        let mut iter = factors.into_iter();
        let first = iter.next()?;
        Some(iter.fold(first, |acc, t| self.mul(acc, t)))
    }
}

impl Add for OpCounts {
    type Output = OpCounts;

    fn add(self, o: OpCounts) -> OpCounts {
        OpCounts::new(
            self.additions + o.additions,
            self.subtractions + o.subtractions,
            self.multiplications + o.multiplications,
            self.divisions + o.divisions,
        )
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, o: OpCounts) {
        *self = *self + o;
    }
}

impl Sub for OpCounts {
    type Output = OpCounts;

    fn sub(self, o: OpCounts) -> OpCounts {
        OpCounts::new(
            self.additions - o.additions,
            self.subtractions - o.subtractions,
            self.multiplications - o.multiplications,
            self.divisions - o.divisions,
        )
    }
}

/// Closed-form counts for the split interpolation formula with `n + 1` nodes
/// and prefix length `r`.
pub fn count_ops(n: usize, r: usize) -> Result<OpCounts> {
    if r > n {
        return Err(Error::SplitOutOfRange { r, n });
    }
    let (n, r) = (n as i64, r as i64);
    let p = n - r;
    Ok(OpCounts::new(
        n,
        n * (n + 1) + p * (p + 1) + r * (r + 1) / 2,
        (2 * p - 1) * (p + 1) + r * (r + 1) / 2,
        n * (n + 1) / 2 - p * (p + 1) / 2 + p + 1,
    ))
}

/// Counts for Newton's divided-difference interpolation formula.
pub fn newton_counts(n: usize) -> OpCounts {
    let n = n as i64;
    OpCounts::new(n, 3 * n * (n + 1) / 2, n * (n + 1) / 2, n * (n + 1) / 2)
}

/// Counts for Lagrange's interpolation formula.
pub fn lagrange_counts(n: usize) -> OpCounts {
    let n = n as i64;
    OpCounts::new(n, 2 * n * (n + 1), (2 * n - 1) * (n + 1), n + 1)
}

/// Closed-form counts for the recursive k-th derivative with `n + 1` nodes.
pub fn diff_op_counts(n: usize, k: usize) -> Result<OpCounts> {
    if k < 1 {
        return Err(Error::OrderOutOfRange { order: k, max: 0 });
    }
    let (n, k) = (n as i64, k as i64);
    Ok(OpCounts::new(
        n * (2 * k + 1) + k * (k + 1) / 2,
        (n + 1) * (2 * n + k * k + k),
        2 * n * (n + 1) + (n + 1) * k * (k - 1) + k * (k + 1) / 2,
        (n + 1) * (2 * k + 1),
    ))
}
