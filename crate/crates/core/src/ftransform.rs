//! The doubling map f on finite sequences and its limit transform.
//!
//! For x = (x_1, ..., x_d) with all entries equal to x_d,
//!
//! ```text
//!   f(x) = (x_d, ..., x_d, 2 x_d, ..., 2 x_d)    (each d times)
//! ```
//!
//! and otherwise, with pivot s = max { 1 <= i <= d-1 : x_i != x_d },
//!
//! ```text
//!   f(x) = (x_1, ..., x_d,  x_1 + x_d, ..., x_{s-1} + x_d,  2 x_d, ..., 2 x_d)
//! ```
//!
//! where 2 x_d appears d - s + 1 times; for s = 1 the middle block is
//! empty. Either way |f(x)| = 2|x| and f(x) begins with x, so iterating f
//! pins every term after finitely many steps: the transform of a seed is
//! the well-defined limit sequence. Iterating from (2, 4, 4, 4) yields
//! 2, 4, 4, 4, 8, 8, 8, 8, 10, 12, 12, 16, ..., the conjectured closed
//! form of Arnold's sequence u_k (A108039).

use alloc::vec::Vec;
use core::fmt;

use crate::arith::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtransformError {
    /// f is defined on nonempty sequences.
    EmptySequence,
}

impl fmt::Display for FtransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FtransformError::EmptySequence => write!(f, "f is defined on nonempty sequences"),
        }
    }
}

impl core::error::Error for FtransformError {}

/// A nonempty finite sequence of naturals, the domain of f.
///
/// Terms at most double per application of f, but nothing bounds the seed
/// or the iteration count, so entries are unbounded naturals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSeq(Vec<Nat>);

impl FiniteSeq {
    pub fn new(terms: Vec<Nat>) -> Result<Self, FtransformError> {
        if terms.is_empty() {
            return Err(FtransformError::EmptySequence);
        }
        Ok(FiniteSeq(terms))
    }

    /// Convenience constructor from machine words.
    pub fn from_u64s(terms: &[u64]) -> Result<Self, FtransformError> {
        FiniteSeq::new(terms.iter().map(|&t| Nat::from(t)).collect())
    }

    pub fn terms(&self) -> &[Nat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction
    }

    pub fn into_terms(self) -> Vec<Nat> {
        self.0
    }
}

/// One application of f. The result is twice as long and begins with `x`.
pub fn apply_f(x: &FiniteSeq) -> FiniteSeq {
    let xs = x.terms();
    let d = xs.len();
    let last = &xs[d - 1];
    let double = last + last;
    let mut out = Vec::with_capacity(2 * d);

    // Pivot: the last position before d that differs from x_d (0-based).
    match (0..d - 1).rev().find(|&i| xs[i] != *last) {
        None => {
            // All entries equal x_d.
            out.extend(core::iter::repeat_with(|| last.clone()).take(d));
            out.extend(core::iter::repeat_with(|| double.clone()).take(d));
        }
        Some(p) => {
            // 1-based pivot s = p + 1: copy x, then x_1+x_d .. x_{s-1}+x_d
            // (empty when s = 1), then d - s + 1 copies of 2 x_d.
            out.extend_from_slice(xs);
            out.extend(xs[..p].iter().map(|xi| xi + last));
            out.extend(core::iter::repeat_with(|| double.clone()).take(d - p));
        }
    }
    debug_assert_eq!(out.len(), 2 * d);
    debug_assert_eq!(&out[..d], xs, "f(x) must begin with x");
    FiniteSeq(out)
}

/// The first `count` terms of the limit sequence of f iterated on `seed`.
///
/// Panics when `count == 0`.
pub fn f_transform(seed: &FiniteSeq, count: usize) -> Vec<Nat> {
    assert!(count >= 1, "requested an empty transform prefix");
    let mut cur = seed.clone();
    while cur.len() < count {
        cur = apply_f(&cur);
    }
    let mut terms = cur.into_terms();
    terms.truncate(count);
    terms
}
