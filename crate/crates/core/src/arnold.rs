//! The 2-adic valuation triangle and Arnold's sequence u_k.
//!
//! Replacing each Entringer number e_{n,i} by its 2-adic valuation gives
//! an infinite triangle. Down the i-th diagonal (the entries e_{n,i} for
//! n >= i) let m_i be the least valuation; u_k is the largest i whose
//! diagonal still holds a valuation below k. Granted the observed (but
//! unproven) weak growth of m_i, u_k is also the number of diagonals with
//! an entry nonzero mod 2^k, which ties u_k to the preperiod of the Euler
//! sequence mod 2^k.
//!
//! Only truncations are computable. Over N rows the running minimum
//! satisfies m̂_i >= m_i and can still drop when more rows arrive, so a
//! reported table carries its evidence: a stability flag (u unchanged when
//! the row count doubles) and a guard band (the table extends at least G
//! diagonals past the last reported u_k, all of them saturated, which the
//! definition of u_k makes automatic once enough rows exist). Violations
//! of the expected growth of m̂ are recorded as anomalies, never asserted.
//!
//! Valuations are computed from residues mod 2^cap, so entries stay one
//! machine word for caps up to 63 and modest bignums beyond; rows are
//! streamed and only the minima vector is retained.

use alloc::vec::Vec;
use core::fmt;

use crate::arith::CappedValuation;
use crate::ring::{ModRing, ModRing64, Ring};
use crate::seidel::TriangleRow;

/// Default guard band: diagonals the table must extend past its last u_k.
pub const DEFAULT_GUARD: usize = 16;
/// Default starting row count for the doubling search.
pub const DEFAULT_START_ROWS: usize = 256;
/// Default ceiling for the doubling search.
pub const DEFAULT_MAX_ROWS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArnoldError {
    /// Too few rows to extend a guard band past the last u_k; the table
    /// would be unusable evidence, so no value is produced.
    GuardUnmet { rows: usize, needed: usize },
    /// The doubling search hit its row ceiling without stabilizing.
    RowBudgetExhausted { k_max: u32, max_rows: usize },
}

impl fmt::Display for ArnoldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArnoldError::GuardUnmet { rows, needed } => write!(
                f,
                "inconclusive: {rows} rows cannot carry the guard band (needs at least {needed})"
            ),
            ArnoldError::RowBudgetExhausted { k_max, max_rows } => write!(
                f,
                "inconclusive: u_1..u_{k_max} did not stabilize within {max_rows} rows"
            ),
        }
    }
}

impl core::error::Error for ArnoldError {}

/// A truncated valuation-triangle summary: diagonal minima over `rows_used`
/// rows at cap `cap`, and the derived u_1 .. u_cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArnoldTable {
    cap: u32,
    rows_used: usize,
    minima: Vec<CappedValuation>,
    u: Vec<usize>,
    guard: usize,
    stable: bool,
    anomalies: Vec<usize>,
}

impl ArnoldTable {
    /// The valuation cap; also the largest k with a reported u_k.
    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn rows_used(&self) -> usize {
        self.rows_used
    }

    /// Running diagonal minima m̂_1 .. m̂_rows (1-based diagonals).
    pub fn minima(&self) -> &[CappedValuation] {
        &self.minima
    }

    /// u_1 .. u_cap.
    pub fn u(&self) -> &[usize] {
        &self.u
    }

    /// u_k for `1 <= k <= cap`. Panics out of range.
    pub fn u_k(&self, k: u32) -> usize {
        assert!((1..=self.cap).contains(&k), "k out of range");
        self.u[(k - 1) as usize]
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    /// True when doubling the row count reproduced the same u vector.
    pub fn stable(&self) -> bool {
        self.stable
    }

    /// 1-based diagonals i (within the guarded range) where m̂_{i+1} < m̂_i,
    /// contradicting the expected weak growth. Logged, not asserted.
    pub fn anomalies(&self) -> &[usize] {
        &self.anomalies
    }
}

/// Streams valuation rows 1..=rows at the given cap into a callback.
fn stream_valuation_rows<R, F, G>(ring: R, rows: usize, v2: F, mut sink: G)
where
    R: Ring,
    F: Fn(&R::Elem) -> CappedValuation,
    G: FnMut(usize, &[CappedValuation]),
{
    if rows == 0 {
        return;
    }
    let mut row = TriangleRow::first(ring);
    let mut vals: Vec<CappedValuation> = Vec::new();
    for n in 1..=rows {
        if n > 1 {
            row = row.next();
        }
        vals.clear();
        vals.extend(row.entries().iter().map(&v2));
        sink(n, &vals);
    }
}

/// Cap-dispatched streaming: machine words up to cap 63, bignums beyond.
fn for_each_valuation_row<G>(rows: usize, cap: u32, sink: G)
where
    G: FnMut(usize, &[CappedValuation]),
{
    assert!(cap >= 1, "cap must be at least 1");
    if cap <= 63 {
        stream_valuation_rows(
            ModRing64::pow2(cap),
            rows,
            move |&e| CappedValuation::of_u64(e, cap),
            sink,
        );
    } else {
        stream_valuation_rows(
            ModRing::pow2(cap),
            rows,
            move |e| CappedValuation::of_nat(e, cap),
            sink,
        );
    }
}

/// Row n of the valuation triangle: v2(e_{n,1}) .. v2(e_{n,n}), capped.
pub fn valuation_row(n: usize, cap: u32) -> Vec<CappedValuation> {
    assert!(n >= 1, "rows are 1-based");
    let mut out = Vec::new();
    for_each_valuation_row(n, cap, |m, vals| {
        if m == n {
            out = vals.to_vec();
        }
    });
    out
}

/// Rows 1..=rows of the valuation triangle.
pub fn valuation_rows(rows: usize, cap: u32) -> Vec<Vec<CappedValuation>> {
    let mut out = Vec::with_capacity(rows);
    for_each_valuation_row(rows, cap, |_, vals| out.push(vals.to_vec()));
    out
}

/// Running minima m̂_i of the valuation diagonals over the first `rows`
/// rows: m̂_i = min over n in [i, rows] of v2(e_{n,i}).
///
/// Streaming: O(rows) memory for the minima vector.
pub fn diagonal_minima(rows: usize, cap: u32) -> Vec<CappedValuation> {
    assert!(rows >= 1, "need at least one row");
    let mut minima = alloc::vec![CappedValuation::top(cap); rows];
    for_each_valuation_row(rows, cap, |_, vals| {
        for (m, v) in minima.iter_mut().zip(vals) {
            if v < m {
                *m = *v;
            }
        }
    });
    minima
}

/// u_k = max { i : m̂_i < k } for k = 1 ..= k_max.
fn u_from_minima(minima: &[CappedValuation], k_max: u32) -> Vec<usize> {
    // last_at[v] = largest 1-based diagonal with m̂_i exactly v (< k_max).
    let mut last_at = alloc::vec![0usize; k_max as usize];
    for (idx0, m) in minima.iter().enumerate() {
        let c = m.clamped();
        if c < k_max {
            last_at[c as usize] = idx0 + 1;
        }
    }
    let mut u = Vec::with_capacity(k_max as usize);
    let mut running = 0usize;
    for k in 1..=k_max as usize {
        running = running.max(last_at[k - 1]);
        debug_assert!(running >= 1, "diagonal 1 contains valuation 0");
        u.push(running);
    }
    u
}

fn growth_anomalies(minima: &[CappedValuation], upto: usize) -> Vec<usize> {
    let upto = upto.min(minima.len());
    // Collects the 1-based index of the diagonal each drop follows.
    (1..upto).filter(|&i| minima[i] < minima[i - 1]).collect()
}

/// Evaluates the table at a fixed row count.
///
/// The stability flag comes from recomputing at twice the rows. When the
/// rows cannot extend `guard` diagonals past the last u_k, the evidence is
/// worthless and the call errors instead of producing a value.
pub fn arnold_table(k_max: u32, rows: usize, guard: usize) -> Result<ArnoldTable, ArnoldError> {
    assert!(k_max >= 1, "k_max must be at least 1");
    assert!(rows >= 1, "need at least one row");
    let guard = guard.max(1);
    let minima = diagonal_minima(rows, k_max);
    let u = u_from_minima(&minima, k_max);
    let u_last = *u.last().expect("k_max >= 1");
    let needed = u_last + guard;
    if rows < needed {
        return Err(ArnoldError::GuardUnmet { rows, needed });
    }
    let doubled = diagonal_minima(rows * 2, k_max);
    let stable = u_from_minima(&doubled, k_max) == u;
    let anomalies = growth_anomalies(&minima, needed);
    Ok(ArnoldTable {
        cap: k_max,
        rows_used: rows,
        minima,
        u,
        guard,
        stable,
        anomalies,
    })
}

/// u_1 .. u_{k_max} with evidence found by doubling the row count from a
/// default start until the table is guarded and stable.
pub fn arnold_sequence(k_max: u32, guard: usize) -> Result<ArnoldTable, ArnoldError> {
    arnold_sequence_from(k_max, guard, DEFAULT_START_ROWS, DEFAULT_MAX_ROWS)
}

/// As [`arnold_sequence`], with explicit doubling bounds.
pub fn arnold_sequence_from(
    k_max: u32,
    guard: usize,
    start_rows: usize,
    max_rows: usize,
) -> Result<ArnoldTable, ArnoldError> {
    let mut rows = start_rows.max(1);
    loop {
        match arnold_table(k_max, rows, guard) {
            Ok(t) if t.stable() => return Ok(t),
            Ok(_) | Err(ArnoldError::GuardUnmet { .. }) => {
                if rows >= max_rows {
                    return Err(ArnoldError::RowBudgetExhausted { k_max, max_rows });
                }
                rows = (rows * 2).min(max_rows);
            }
            Err(e) => return Err(e),
        }
    }
}
