//! Empirical detection of eventual periodicity.
//!
//! The sequence (E_n mod q) is eventually periodic; s(q) is the number of
//! leading terms to delete before it becomes purely periodic and d(q) is
//! the minimal period of what remains. Given a finite window, only a
//! candidate (s, d) is observable, so a profile also records how much
//! evidence backs it: the margin is the number of whole periods the window
//! repeats beyond the first one after the preperiod, and a profile is
//! `Confirmed` only when that margin reaches the configured minimum.
//!
//! For each candidate period d the detector computes s_d, the least offset
//! from which the window is d-periodic, by one backward scan; the reported
//! s is the least s_d over all candidates, and the reported d the least
//! candidate achieving it (that order defines the pair: s first, then d).
//! Candidates run upward to `window / (min_margin + 1)` with an early exit
//! once s_d = 0 appears, so the worst case is O(window * candidates).
//! Minimality leaves witnesses: every shorter period fails somewhere at or
//! past s, and s - 1 itself fails for period d; both are recorded in the
//! profile and can be re-checked against the window by [`verify_witnesses`].

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::arith::Nat;
use crate::ring::{ModRing, ModRing64};
use crate::seidel::euler_sequence;

/// Default evidence requirement: a confirmed profile repeats its period at
/// least this many whole times beyond the first.
pub const DEFAULT_MIN_MARGIN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodError {
    /// Detection needs at least one term.
    EmptySequence,
    /// Profiling needs a window of at least two terms.
    WindowTooSmall(usize),
    /// The modulus must be at least 1.
    ZeroModulus,
}

impl fmt::Display for PeriodError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodError::EmptySequence => write!(f, "cannot profile an empty sequence"),
            PeriodError::WindowTooSmall(n) => write!(f, "window of {n} terms is too small"),
            PeriodError::ZeroModulus => write!(f, "modulus must be at least 1"),
        }
    }
}

impl core::error::Error for PeriodError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileStatus {
    /// The margin requirement was met.
    Confirmed,
    /// Best candidate found, but the window is too short to back it.
    Inconclusive,
}

/// Indices in the window at which minimality fails, re-checkable by scan.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witnesses {
    /// For each shorter period d' = 1 .. d-1 (in order), an index j >= s
    /// with `seq[j] != seq[j + d']`.
    pub shorter_period_failures: Vec<usize>,
    /// When s >= 1, the index s - 1, where `seq[s-1] != seq[s-1+d]`.
    pub preperiod_failure: Option<usize>,
}

/// The detected eventual-periodicity data of one window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodProfile {
    /// The modulus profiled, when the window came from (E_n mod q).
    pub modulus: Option<Nat>,
    /// s: terms to delete before the window turns periodic.
    pub preperiod: usize,
    /// d: minimal period of the remainder.
    pub period: usize,
    /// Window length the profile was computed from.
    pub window: usize,
    /// Whole periods observed beyond the first one after the preperiod.
    pub margin: usize,
    pub status: ProfileStatus,
    pub witnesses: Witnesses,
}

impl PeriodProfile {
    pub fn is_confirmed(&self) -> bool {
        self.status == ProfileStatus::Confirmed
    }
}

/// Detects the (preperiod, minimal period) of a finite window.
///
/// `min_margin` is clamped up to 1. The returned profile is `Confirmed`
/// when `window - s >= (min_margin + 1) * d`; otherwise the best candidate
/// is reported as `Inconclusive`.
pub fn detect<T: PartialEq>(seq: &[T], min_margin: usize) -> Result<PeriodProfile, PeriodError> {
    let n = seq.len();
    if n == 0 {
        return Err(PeriodError::EmptySequence);
    }
    let min_margin = min_margin.max(1);
    let candidate_cap = (n / (min_margin + 1)).max(1);

    // s_d for each candidate d, by backward scan: one past the largest j
    // with seq[j] != seq[j + d] (0 when the window is d-periodic outright).
    let mut s_by_d: Vec<usize> = Vec::with_capacity(candidate_cap);
    let mut best: Option<(usize, usize)> = None;
    for d in 1..=candidate_cap {
        let mut s_d = 0usize;
        if n > d {
            let mut j = n - 1 - d;
            loop {
                if seq[j] != seq[j + d] {
                    s_d = j + 1;
                    break;
                }
                if j == 0 {
                    break;
                }
                j -= 1;
            }
        }
        s_by_d.push(s_d);
        if best.is_none_or(|(bs, _)| s_d < bs) {
            best = Some((s_d, d));
        }
        if s_d == 0 {
            break; // s cannot improve, and d is minimal among ties by order
        }
    }
    let (preperiod, period) = best.expect("at least one candidate was tried");

    let whole_periods = (n - preperiod) / period;
    let margin = whole_periods.saturating_sub(1);
    let status = if margin >= min_margin {
        ProfileStatus::Confirmed
    } else {
        ProfileStatus::Inconclusive
    };
    let witnesses = Witnesses {
        // Every d' < d has s_{d'} > s, so s_{d'} - 1 is a failing index at
        // or past s.
        shorter_period_failures: (1..period).map(|dp| s_by_d[dp - 1] - 1).collect(),
        preperiod_failure: preperiod.checked_sub(1),
    };
    Ok(PeriodProfile {
        modulus: None,
        preperiod,
        period,
        window: n,
        margin,
        status,
        witnesses,
    })
}

/// Re-checks a profile against the window it claims to describe: the tail
/// is d-periodic from s, every recorded witness index genuinely fails, and
/// the witness list covers every shorter period.
pub fn verify_witnesses<T: PartialEq>(seq: &[T], p: &PeriodProfile) -> bool {
    let n = seq.len();
    let (s, d) = (p.preperiod, p.period);
    if n != p.window || d == 0 || s + d > n {
        return false;
    }
    let tail_periodic = (s..n - d).all(|j| seq[j] == seq[j + d]);
    let w = &p.witnesses;
    let shorter_fail = w.shorter_period_failures.len() == d - 1
        && (1..d).all(|dp| {
            let j = w.shorter_period_failures[dp - 1];
            j >= s && j + dp < n && seq[j] != seq[j + dp]
        });
    let preperiod_fail = match w.preperiod_failure {
        None => s == 0,
        Some(j) => j + 1 == s && j + d < n && seq[j] != seq[j + d],
    };
    tail_periodic && shorter_fail && preperiod_fail
}

/// Profiles (E_n mod q) over the window n = 0 .. window-1.
///
/// q = 1 short-circuits to the constant-zero profile. Moduli below 2^63
/// run in machine words; larger ones in bignums.
pub fn profile_euler(
    q: &Nat,
    window: usize,
    min_margin: usize,
) -> Result<PeriodProfile, PeriodError> {
    if q.is_zero() {
        return Err(PeriodError::ZeroModulus);
    }
    if window < 2 {
        return Err(PeriodError::WindowTooSmall(window));
    }
    if q.is_one() {
        let margin = window - 1;
        return Ok(PeriodProfile {
            modulus: Some(q.clone()),
            preperiod: 0,
            period: 1,
            window,
            margin,
            status: if margin >= min_margin.max(1) {
                ProfileStatus::Confirmed
            } else {
                ProfileStatus::Inconclusive
            },
            witnesses: Witnesses::default(),
        });
    }
    let mut profile = if q.bits() <= 63 {
        let q64 = q.to_u64().expect("fits in 63 bits");
        let terms = euler_sequence(ModRing64::new(q64), window);
        detect(&terms, min_margin)?
    } else {
        let terms = euler_sequence(ModRing::new(q.clone()), window);
        detect(&terms, min_margin)?
    };
    profile.modulus = Some(q.clone());
    Ok(profile)
}
