//! The Seidel-Entringer-Arnold triangle and the Euler up/down numbers.
//!
//! Row n holds the Entringer numbers e_{n,1} .. e_{n,n}, where e_{n,i}
//! counts the up/down permutations of {1..n} (shape sigma(1) < sigma(2) >
//! sigma(3) < ...) whose last value is i. Rows obey the boustrophedon
//! recurrence
//!
//! ```text
//!   e_{n,i} = sum_{j <  i} e_{n-1,j}   (n even)
//!   e_{n,i} = sum_{j >= i} e_{n-1,j}   (n odd)
//! ```
//!
//! which a running prefix (or suffix) sum evaluates in O(n) ring
//! additions, so the incremental form e_{n,i+1} - e_{n,i} is +e_{n-1,i}
//! for even n and -e_{n-1,i} for odd n. The Euler number E_n is the row-n
//! sum (E_0 = 1 by convention): 1, 1, 1, 2, 5, 16, 61, 272, 1385, ...
//!
//! Rows are generic over the coefficient [`Ring`], so one recurrence
//! serves both the exact triangle and its reductions mod q, and reduction
//! commutes with generation. [`brute_force_entringer`] recounts small rows
//! by enumerating permutations and is deliberately independent of the
//! recurrence; it exists to check it.

use alloc::vec::Vec;
use core::fmt;

use crate::ring::{ExactRing, Ring};

/// Largest row size [`brute_force_entringer`] will enumerate (n! blowup).
pub const BRUTE_FORCE_MAX: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeidelError {
    /// Brute-force enumeration supports `1 <= n <= 10`.
    BruteForceRange(usize),
}

impl fmt::Display for SeidelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeidelError::BruteForceRange(n) => {
                write!(
                    f,
                    "brute-force enumeration supports 1 <= n <= {BRUTE_FORCE_MAX}, got {n}"
                )
            }
        }
    }
}

impl core::error::Error for SeidelError {}

/// One triangle row: the values e_{n,1} .. e_{n,n} over a fixed ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleRow<R: Ring> {
    n: usize,
    entries: Vec<R::Elem>,
    ring: R,
}

impl<R: Ring> TriangleRow<R> {
    /// Row 1, which is the single entry e_{1,1} = 1.
    pub fn first(ring: R) -> Self {
        let entries = alloc::vec![ring.one()];
        TriangleRow {
            n: 1,
            entries,
            ring,
        }
    }

    /// Builds a row from raw entries; `n` is the entry count.
    ///
    /// Panics on an empty entry list. The caller vouches that the values
    /// actually are a triangle row (used by tests and the brute-force
    /// counter).
    pub fn from_entries(ring: R, entries: Vec<R::Elem>) -> Self {
        assert!(!entries.is_empty(), "a triangle row is nonempty");
        TriangleRow {
            n: entries.len(),
            entries,
            ring,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<R::Elem> {
        self.entries
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// 1-based accessor: `entry(i)` is e_{n,i}. Panics out of range.
    pub fn entry(&self, i: usize) -> &R::Elem {
        assert!((1..=self.n).contains(&i), "entry index out of range");
        &self.entries[i - 1]
    }

    /// Row sum, which is the Euler number E_n.
    pub fn sum(&self) -> R::Elem {
        let mut acc = self.ring.zero();
        for e in &self.entries {
            self.ring.add_assign(&mut acc, e);
        }
        acc
    }

    /// The next row down, in O(n) ring additions.
    pub fn next(&self) -> TriangleRow<R> {
        let ring = self.ring.clone();
        let n = self.n + 1;
        let mut entries = Vec::with_capacity(n);
        let mut acc = ring.zero();
        if n.is_multiple_of(2) {
            // e_{n,1} = 0, then e_{n,i} = e_{n,i-1} + e_{n-1,i-1}.
            entries.push(acc.clone());
            for prev in &self.entries {
                ring.add_assign(&mut acc, prev);
                entries.push(acc.clone());
            }
        } else {
            // e_{n,n} = 0, then e_{n,i} = e_{n,i+1} + e_{n-1,i}.
            entries.push(acc.clone());
            for prev in self.entries.iter().rev() {
                ring.add_assign(&mut acc, prev);
                entries.push(acc.clone());
            }
            entries.reverse();
        }
        debug_assert_eq!(entries.len(), n);
        TriangleRow { n, entries, ring }
    }
}

/// Successor of a row; free-function form of [`TriangleRow::next`].
pub fn next_row<R: Ring>(prev: &TriangleRow<R>) -> TriangleRow<R> {
    prev.next()
}

/// Iterator over rows 1, 2, 3, ... of the triangle.
pub struct Rows<R: Ring> {
    cur: Option<TriangleRow<R>>,
}

impl<R: Ring> Iterator for Rows<R> {
    type Item = TriangleRow<R>;

    fn next(&mut self) -> Option<TriangleRow<R>> {
        let cur = self.cur.take()?;
        self.cur = Some(cur.next());
        Some(cur)
    }
}

/// Streams the triangle from row 1 over the given ring.
pub fn triangle_rows<R: Ring>(ring: R) -> Rows<R> {
    Rows {
        cur: Some(TriangleRow::first(ring)),
    }
}

/// The Euler numbers E_0 .. E_{count-1} over the given ring.
///
/// Streaming: holds at most two rows at a time. Panics when `count == 0`.
pub fn euler_sequence<R: Ring>(ring: R, count: usize) -> Vec<R::Elem> {
    assert!(count >= 1, "an empty Euler sequence has no use");
    let mut out = Vec::with_capacity(count);
    out.push(ring.one()); // E_0
    if count == 1 {
        return out;
    }
    let mut row = TriangleRow::first(ring);
    out.push(row.sum()); // E_1
    while out.len() < count {
        row = row.next();
        out.push(row.sum());
    }
    out
}

/// Is `p` an up/down permutation? Rises into even positions, falls into
/// odd ones: p(1) < p(2) > p(3) < p(4) ...
fn is_up_down(p: &[usize]) -> bool {
    for idx in 1..p.len() {
        let rising = (idx + 1) % 2 == 0;
        if rising != (p[idx - 1] < p[idx]) {
            return false;
        }
    }
    true
}

/// Recounts row n by enumerating all n! permutations and bucketing the
/// up/down ones by their final value. Exact ring, `1 <= n <= 10`.
pub fn brute_force_entringer(n: usize) -> Result<TriangleRow<ExactRing>, SeidelError> {
    if !(1..=BRUTE_FORCE_MAX).contains(&n) {
        return Err(SeidelError::BruteForceRange(n));
    }
    let mut counts = alloc::vec![0u64; n];
    let mut bucket = |p: &[usize]| {
        if is_up_down(p) {
            counts[p[n - 1] - 1] += 1;
        }
    };
    // Heap's algorithm, iterative form.
    let mut a: Vec<usize> = (1..=n).collect();
    let mut c = alloc::vec![0usize; n];
    bucket(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            bucket(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let entries = counts.into_iter().map(crate::arith::Nat::from).collect();
    Ok(TriangleRow::from_entries(ExactRing, entries))
}
