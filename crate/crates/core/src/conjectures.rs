//! Predicted periodicity of the Euler sequence mod q, and a verification
//! suite that confronts the predictions with measured profiles.
//!
//! What is proven (and therefore checked as hard identities):
//!
//! * Knuth–Buckholtz (1967): for an odd prime p the sequence E_n mod p is
//!   periodic with period exactly p - 1 when p = 1 (mod 4) and 2p - 2
//!   otherwise, the preperiod is at most 1, and for powers p^k the
//!   preperiod is at most k while the period divides p^(k-1) d(p).
//! * Gluing lemma: for q = prod p_i^{a_i} the preperiod of E_n mod q is
//!   the max of the factor preperiods and the period is the lcm of the
//!   factor periods (residues mod q are determined componentwise).
//!
//! What is predicted but unproven (checked as falsifiable conjectures):
//!
//! * odd p, k >= 2: preperiod exactly k, period exactly p^(k-1) d(p);
//! * powers of two: preperiod of E_n mod 2^k equals Arnold's u_k, period
//!   2^k except for the single exception d(4) = 2;
//! * the whole sequence (u_k) is generated from the seed (2, 4, 4, 4) by
//!   the doubling map implemented in [`crate::ftransform`].
//!
//! A violated proven identity is reported as a [`Verdict::Defect`]; a
//! violated prediction is a [`Verdict::Mismatch`]; windows too small to
//! confirm a profile yield [`Verdict::Inconclusive`], never a false pass.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::arith::{factorize, ArithError, Nat};
use crate::arnold::{arnold_sequence, ArnoldError};
use crate::ftransform::{f_transform, FiniteSeq};
use crate::periodicity::{profile_euler, PeriodError, PeriodProfile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjectureError {
    /// `kb_d` is defined for odd primes only.
    NotOddPrime(u64),
    /// The bounds check applies to odd prime powers only.
    NotOddPrimePower(u64),
    /// The gluing check needs at least two distinct prime factors.
    NotComposite(u64),
    /// Factor profiles do not line up with the factorization of q.
    FactorMismatch,
    /// A profile was measured at a different modulus than claimed.
    ProfileModulusMismatch,
    /// Predicting 2^k needs u_k, which the supplied table does not reach.
    NeedsArnoldTerm {
        k: u32,
    },
    /// Composed preperiod/period left the u64 range.
    Overflow,
    Arith(ArithError),
    Arnold(ArnoldError),
}

impl fmt::Display for ConjectureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjectureError::NotOddPrime(q) => write!(f, "{q} is not an odd prime"),
            ConjectureError::NotOddPrimePower(q) => write!(f, "{q} is not an odd prime power"),
            ConjectureError::NotComposite(q) => {
                write!(f, "{q} does not have two distinct prime factors")
            }
            ConjectureError::FactorMismatch => {
                write!(f, "factor profiles do not match the factorization")
            }
            ConjectureError::ProfileModulusMismatch => {
                write!(f, "profile was measured at a different modulus")
            }
            ConjectureError::NeedsArnoldTerm { k } => {
                write!(f, "prediction needs u_{k}, beyond the supplied table")
            }
            ConjectureError::Overflow => write!(f, "composed period exceeds u64"),
            ConjectureError::Arith(e) => write!(f, "{e}"),
            ConjectureError::Arnold(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ConjectureError {}

impl From<ArithError> for ConjectureError {
    fn from(e: ArithError) -> Self {
        ConjectureError::Arith(e)
    }
}

impl From<ArnoldError> for ConjectureError {
    fn from(e: ArnoldError) -> Self {
        ConjectureError::Arnold(e)
    }
}

/// The proven period of E_n mod p for an odd prime p:
/// p - 1 when p = 1 (mod 4), else 2p - 2.
pub fn kb_d(p: u64) -> Result<u64, ConjectureError> {
    let f = factorize(p)?;
    if !f.is_odd_prime_power() || f.factors()[0].1 != 1 {
        return Err(ConjectureError::NotOddPrime(p));
    }
    Ok(if p % 4 == 1 { p - 1 } else { 2 * (p - 1) })
}

/// Whether a prediction rests on proven results or on open conjectures.
///
/// The label is conservative: `Theorem` is used only for single odd
/// primes, where the period is pinned exactly. (Even there the preperiod
/// value 1 is the conjectured one; the proven statement is only <= 1.)
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Theorem,
    Conjecture,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Theorem => "theorem",
            Provenance::Conjecture => "conjecture",
        })
    }
}

/// Predicted preperiod and period of E_n mod q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub q: u64,
    pub preperiod: u64,
    pub period: u64,
    pub provenance: Provenance,
    /// Which rule produced the numbers ("knuth-buckholtz", "crt", ...).
    pub source: String,
}

fn lcm_checked(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return None;
    }
    (a / a.gcd(&b)).checked_mul(b)
}

/// Predicts the preperiod and period of E_n mod a prime power, given
/// u_1, u_2, ... for the even case.
fn predict_prime_power(p: u64, a: u32, u_seq: &[usize]) -> Result<(u64, u64), ConjectureError> {
    if p == 2 {
        let s = *u_seq
            .get((a - 1) as usize)
            .ok_or(ConjectureError::NeedsArnoldTerm { k: a })? as u64;
        let d = if a == 2 {
            2
        } else {
            1u64.checked_shl(a).ok_or(ConjectureError::Overflow)?
        };
        Ok((s, d))
    } else {
        let kb = kb_d(p)?;
        let d = p
            .checked_pow(a - 1)
            .and_then(|m| m.checked_mul(kb))
            .ok_or(ConjectureError::Overflow)?;
        Ok((a as u64, d))
    }
}

/// Predicts the preperiod and period of E_n mod q (q >= 2) by factoring q,
/// predicting each prime power, and gluing with max/lcm. `u_seq` supplies
/// Arnold's u_1, u_2, ... for the powers of two.
pub fn predict(q: u64, u_seq: &[usize]) -> Result<Prediction, ConjectureError> {
    let f = factorize(q)?;
    let mut preperiod = 0u64;
    let mut period = 1u64;
    for &(p, a) in f.factors() {
        let (s, d) = predict_prime_power(p, a, u_seq)?;
        preperiod = preperiod.max(s);
        period = lcm_checked(period, d).ok_or(ConjectureError::Overflow)?;
    }
    let (provenance, source) = match f.factors() {
        [(2, _)] => (Provenance::Conjecture, "power-of-two conjecture"),
        [(_, 1)] => (Provenance::Theorem, "knuth-buckholtz"),
        [(_, _)] => (Provenance::Conjecture, "odd-prime-power conjecture"),
        _ => (Provenance::Conjecture, "crt"),
    };
    Ok(Prediction {
        q,
        preperiod,
        period,
        provenance,
        source: String::from(source),
    })
}

/// Outcome of a single proven-identity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Violation,
    /// The measured profile was not confirmed, so nothing can be said.
    Inconclusive,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckOutcome::Pass => "pass",
            CheckOutcome::Violation => "violation",
            CheckOutcome::Inconclusive => "inconclusive",
        })
    }
}

/// Result of testing a measured profile of E_n mod p^k against the proven
/// constraints: preperiod <= k, and the period divides p^(k-1) d(p)
/// (equals it when k = 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KbBoundsCheck {
    pub q: u64,
    /// k: the proven cap on the preperiod.
    pub max_preperiod: u64,
    /// p^(k-1) d(p): the proven multiple of the period.
    pub period_divisor: u64,
    pub outcome: CheckOutcome,
}

fn require_modulus(profile: &PeriodProfile, q: u64) -> Result<(), ConjectureError> {
    match &profile.modulus {
        Some(m) if *m != Nat::from(q) => Err(ConjectureError::ProfileModulusMismatch),
        _ => Ok(()),
    }
}

/// Tests a measured profile of E_n mod an odd prime power against the
/// proven Knuth–Buckholtz constraints.
pub fn check_kb_bounds(q: u64, profile: &PeriodProfile) -> Result<KbBoundsCheck, ConjectureError> {
    let f = factorize(q)?;
    if !f.is_odd_prime_power() {
        return Err(ConjectureError::NotOddPrimePower(q));
    }
    require_modulus(profile, q)?;
    let (p, k) = f.factors()[0];
    let kb = kb_d(p)?;
    let divisor = p
        .checked_pow(k - 1)
        .and_then(|m| m.checked_mul(kb))
        .ok_or(ConjectureError::Overflow)?;
    let outcome = if !profile.is_confirmed() {
        CheckOutcome::Inconclusive
    } else {
        let s_ok = profile.preperiod as u64 <= k as u64;
        let d = profile.period as u64;
        // k = 1 pins the period exactly; k >= 2 only up to divisibility.
        let d_ok = if k == 1 {
            d == divisor
        } else {
            divisor % d == 0
        };
        if s_ok && d_ok {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Violation
        }
    };
    Ok(KbBoundsCheck {
        q,
        max_preperiod: k as u64,
        period_divisor: divisor,
        outcome,
    })
}

/// Result of testing the gluing identity at a composite q: the profile
/// mod q must have preperiod max(s_i) and period lcm(d_i) over measured
/// profiles of the prime-power factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtCheck {
    pub q: u64,
    /// max of the factor preperiods, when every factor was confirmed.
    pub expected_preperiod: Option<u64>,
    /// lcm of the factor periods, when every factor was confirmed.
    pub expected_period: Option<u64>,
    pub outcome: CheckOutcome,
}

/// Tests the gluing identity. `factor_profiles` must carry measured
/// profiles of the prime-power factors of q in ascending prime order,
/// each tagged with its modulus.
pub fn crt_check(
    q: u64,
    q_profile: &PeriodProfile,
    factor_profiles: &[PeriodProfile],
) -> Result<CrtCheck, ConjectureError> {
    let f = factorize(q)?;
    if f.factors().len() < 2 {
        return Err(ConjectureError::NotComposite(q));
    }
    require_modulus(q_profile, q)?;
    if factor_profiles.len() != f.factors().len() {
        return Err(ConjectureError::FactorMismatch);
    }
    for ((p, a), profile) in f.factors().iter().zip(factor_profiles) {
        let pa = p.checked_pow(*a).ok_or(ConjectureError::Overflow)?;
        match &profile.modulus {
            Some(m) if *m == Nat::from(pa) => {}
            _ => return Err(ConjectureError::FactorMismatch),
        }
    }
    let expected = if factor_profiles.iter().all(|p| p.is_confirmed()) {
        let mut s = 0u64;
        let mut d = 1u64;
        for p in factor_profiles {
            s = s.max(p.preperiod as u64);
            d = lcm_checked(d, p.period as u64).ok_or(ConjectureError::Overflow)?;
        }
        Some((s, d))
    } else {
        None
    };
    let outcome = match (expected, q_profile.is_confirmed()) {
        (Some((s, d)), true) => {
            if q_profile.preperiod as u64 == s && q_profile.period as u64 == d {
                CheckOutcome::Pass
            } else {
                CheckOutcome::Violation
            }
        }
        _ => CheckOutcome::Inconclusive,
    };
    Ok(CrtCheck {
        q,
        expected_preperiod: expected.map(|(s, _)| s),
        expected_period: expected.map(|(_, d)| d),
        outcome,
    })
}

/// What the verification suite covers and how hard it is allowed to work.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteScope {
    /// Odd prime powers q with q < this bound are verified.
    pub odd_limit: u64,
    /// Powers of two 2^1 .. 2^this are verified.
    pub pow2_max_exp: u32,
    /// Composite q <= this bound with two or more distinct primes.
    pub composite_limit: u64,
    /// How many u_k terms to compute and compare against the seed map.
    pub arnold_k_max: u32,
    /// Guard band for the u_k table.
    pub arnold_guard: usize,
    /// Periods of evidence demanded beyond the first (see periodicity).
    pub min_margin: usize,
    /// Extra rows added to every measurement window.
    pub window_slack: u64,
    /// Hard cap on any measurement window; hitting it downgrades the row
    /// to inconclusive rather than running forever.
    pub max_window: u64,
    /// Worker threads; 0 picks a sensible default. Ignored without the
    /// `std` feature (jobs then run sequentially).
    pub workers: usize,
}

impl Default for SuiteScope {
    fn default() -> Self {
        SuiteScope {
            odd_limit: 200,
            pow2_max_exp: 8,
            composite_limit: 100,
            arnold_k_max: 64,
            arnold_guard: crate::arnold::DEFAULT_GUARD,
            min_margin: crate::periodicity::DEFAULT_MIN_MARGIN,
            window_slack: 32,
            max_window: 1 << 24,
            workers: 0,
        }
    }
}

/// Per-row conclusion of the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Prediction and measurement agree.
    Match,
    /// A prediction (conjectural value) disagrees with the measurement.
    Mismatch,
    /// The window was too small to confirm a profile.
    Inconclusive,
    /// A proven identity failed. This should never happen; it means a bug
    /// in the implementation or a genuinely false theorem.
    Defect,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Defect => "defect",
        })
    }
}

/// Which family a report row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    OddPrimePower,
    PowerOfTwo,
    Composite,
    /// The seed-map row: u_1..u_k against the doubling map of (2,4,4,4).
    FTransform,
}

impl fmt::Display for RowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowKind::OddPrimePower => "odd-prime-power",
            RowKind::PowerOfTwo => "power-of-two",
            RowKind::Composite => "composite",
            RowKind::FTransform => "f-transform",
        })
    }
}

/// One verified modulus (or the seed-map comparison).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub kind: RowKind,
    /// None only for the seed-map row.
    pub q: Option<u64>,
    pub prediction: Option<Prediction>,
    pub empirical: Option<PeriodProfile>,
    pub bounds: Option<KbBoundsCheck>,
    pub crt: Option<CrtCheck>,
    pub verdict: Verdict,
    pub note: String,
    /// The measured residue window, attached only when the row mismatches
    /// so the disagreement can be inspected offline.
    pub witness_window: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SuiteSummary {
    pub total: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub inconclusive: usize,
    pub defects: usize,
}

/// The full outcome of a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub scope: SuiteScope,
    pub rows: Vec<ReportRow>,
    pub summary: SuiteSummary,
    /// Wall-clock duration; absent without the `std` feature.
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn has_mismatch_or_defect(&self) -> bool {
        self.summary.mismatches > 0 || self.summary.defects > 0
    }

    pub fn has_inconclusive(&self) -> bool {
        self.summary.inconclusive > 0
    }
}

/// Rows to measure: predicted preperiod, min_margin + 1 full periods, and
/// slack, capped by the scope. Saturates instead of overflowing.
fn window_for(preperiod: u64, period: u64, scope: &SuiteScope) -> (usize, bool) {
    let want = (preperiod as u128)
        + (scope.min_margin as u128 + 1) * (period as u128)
        + (scope.window_slack as u128);
    let capped = want > scope.max_window as u128;
    let window = if capped {
        scope.max_window as u128
    } else {
        want
    };
    ((window.max(2)) as usize, capped)
}

fn residue_window(q: u64, window: usize) -> Vec<u64> {
    use crate::ring::{ModRing, ModRing64};
    use num_traits::ToPrimitive;
    if q <= ModRing64::MAX_MODULUS {
        crate::seidel::euler_sequence(ModRing64::new(q), window)
    } else {
        crate::seidel::euler_sequence(ModRing::new(Nat::from(q)), window)
            .iter()
            .map(|e| e.to_u64().expect("residue below u64 modulus"))
            .collect()
    }
}

fn inconclusive_row(kind: RowKind, q: u64, note: String) -> ReportRow {
    ReportRow {
        kind,
        q: Some(q),
        prediction: None,
        empirical: None,
        bounds: None,
        crt: None,
        verdict: Verdict::Inconclusive,
        note,
        witness_window: None,
    }
}

fn profile_for(
    q: u64,
    preperiod: u64,
    period: u64,
    scope: &SuiteScope,
) -> Result<(PeriodProfile, bool), PeriodError> {
    let (window, capped) = window_for(preperiod, period, scope);
    let profile = profile_euler(&Nat::from(q), window, scope.min_margin)?;
    Ok((profile, capped))
}

/// Measures one modulus and renders the verdict.
fn run_job(kind: RowKind, q: u64, u_seq: &[usize], scope: &SuiteScope) -> ReportRow {
    let prediction = match predict(q, u_seq) {
        Ok(p) => p,
        Err(e) => return inconclusive_row(kind, q, format!("prediction unavailable: {e}")),
    };
    let (profile, capped) = match profile_for(q, prediction.preperiod, prediction.period, scope) {
        Ok(pair) => pair,
        Err(e) => return inconclusive_row(kind, q, format!("profile unavailable: {e}")),
    };
    let mut note = if capped {
        format!("window capped at {}", scope.max_window)
    } else {
        format!("window {}", profile.window)
    };

    let bounds = if kind == RowKind::OddPrimePower {
        match check_kb_bounds(q, &profile) {
            Ok(b) => Some(b),
            Err(e) => return inconclusive_row(kind, q, format!("bounds check failed: {e}")),
        }
    } else {
        None
    };

    let crt = if kind == RowKind::Composite {
        let factors = match factorize(q) {
            Ok(f) => f,
            Err(e) => return inconclusive_row(kind, q, format!("factorization failed: {e}")),
        };
        let mut factor_profiles = Vec::with_capacity(factors.factors().len());
        let mut failure = None;
        for &(p, a) in factors.factors() {
            let pa = match p.checked_pow(a) {
                Some(pa) => pa,
                None => {
                    failure = Some(String::from("factor out of range"));
                    break;
                }
            };
            let fp = predict(pa, u_seq)
                .map_err(|e| format!("factor {pa}: {e}"))
                .and_then(|pred| {
                    profile_for(pa, pred.preperiod, pred.period, scope)
                        .map(|(profile, _)| profile)
                        .map_err(|e| format!("factor {pa}: {e}"))
                });
            match fp {
                Ok(profile) => factor_profiles.push(profile),
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
        }
        if let Some(e) = failure {
            return inconclusive_row(kind, q, format!("factor profile unavailable: {e}"));
        }
        match crt_check(q, &profile, &factor_profiles) {
            Ok(c) => Some(c),
            Err(e) => return inconclusive_row(kind, q, format!("gluing check failed: {e}")),
        }
    } else {
        None
    };

    let violated = bounds.as_ref().map(|b| b.outcome) == Some(CheckOutcome::Violation)
        || crt.as_ref().map(|c| c.outcome) == Some(CheckOutcome::Violation);
    let unconfirmed = !profile.is_confirmed()
        || crt.as_ref().map(|c| c.outcome) == Some(CheckOutcome::Inconclusive);
    let agrees = profile.preperiod as u64 == prediction.preperiod
        && profile.period as u64 == prediction.period;
    let verdict = if violated {
        Verdict::Defect
    } else if unconfirmed {
        Verdict::Inconclusive
    } else if agrees {
        Verdict::Match
    } else {
        Verdict::Mismatch
    };
    let witness_window = if verdict == Verdict::Mismatch || verdict == Verdict::Defect {
        note = format!(
            "{note}; measured ({}, {}) vs predicted ({}, {})",
            profile.preperiod, profile.period, prediction.preperiod, prediction.period
        );
        Some(residue_window(q, profile.window))
    } else {
        None
    };
    ReportRow {
        kind,
        q: Some(q),
        prediction: Some(prediction),
        empirical: Some(profile),
        bounds,
        crt,
        verdict,
        note,
        witness_window,
    }
}

/// Compares u_1..u_k against the doubling-map orbit of the seed (2,4,4,4).
fn seed_map_row(u_seq: &[usize]) -> ReportRow {
    let seed = FiniteSeq::from_u64s(&[2, 4, 4, 4]).expect("seed is nonempty");
    let mapped = f_transform(&seed, u_seq.len());
    let first_diff = u_seq
        .iter()
        .zip(&mapped)
        .position(|(&u, t)| Nat::from(u) != *t);
    let (verdict, note) = match first_diff {
        None => (
            Verdict::Match,
            format!(
                "u_1..u_{} equal the seed-map orbit of (2,4,4,4)",
                u_seq.len()
            ),
        ),
        Some(i) => (
            Verdict::Mismatch,
            format!(
                "first divergence at k = {}: u_k = {} vs mapped {}",
                i + 1,
                u_seq[i],
                mapped[i]
            ),
        ),
    };
    ReportRow {
        kind: RowKind::FTransform,
        q: None,
        prediction: None,
        empirical: None,
        bounds: None,
        crt: None,
        verdict,
        note,
        witness_window: None,
    }
}

fn suite_jobs(scope: &SuiteScope) -> Vec<(RowKind, u64)> {
    let mut jobs = Vec::new();
    for q in 3..scope.odd_limit {
        if q % 2 == 1 {
            if let Ok(f) = factorize(q) {
                if f.is_odd_prime_power() {
                    jobs.push((RowKind::OddPrimePower, q));
                }
            }
        }
    }
    for k in 1..=scope.pow2_max_exp {
        jobs.push((RowKind::PowerOfTwo, 1u64 << k));
    }
    for q in 6..=scope.composite_limit {
        if let Ok(f) = factorize(q) {
            if f.factors().len() >= 2 {
                jobs.push((RowKind::Composite, q));
            }
        }
    }
    jobs.sort_by_key(|&(_, q)| q);
    jobs
}

#[cfg(feature = "std")]
fn run_jobs(jobs: &[(RowKind, u64)], u_seq: &[usize], scope: &SuiteScope) -> Vec<ReportRow> {
    use std::panic::{catch_unwind, AssertUnwindSafe};
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;

    let workers = match scope.workers {
        0 => std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
            .min(8),
        w => w,
    }
    .min(jobs.len().max(1));

    let cursor = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<ReportRow>>> = Mutex::new(alloc::vec![None; jobs.len()]);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = cursor.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let (kind, q) = jobs[i];
                let row = catch_unwind(AssertUnwindSafe(|| run_job(kind, q, u_seq, scope)))
                    .unwrap_or_else(|_| inconclusive_row(kind, q, String::from("job panicked")));
                slots.lock().expect("slot lock")[i] = Some(row);
            });
        }
    });
    slots
        .into_inner()
        .expect("slot lock")
        .into_iter()
        .map(|r| r.expect("every job stored a row"))
        .collect()
}

#[cfg(not(feature = "std"))]
fn run_jobs(jobs: &[(RowKind, u64)], u_seq: &[usize], scope: &SuiteScope) -> Vec<ReportRow> {
    jobs.iter()
        .map(|&(kind, q)| run_job(kind, q, u_seq, scope))
        .collect()
}

/// Runs the whole verification suite: every odd prime power below the odd
/// limit, powers of two up to the exponent cap, composite moduli up to the
/// composite limit (each glued from its own measured factors), and the
/// seed-map comparison for u_k itself.
///
/// Individual failures (window too small, capped windows) degrade to
/// inconclusive rows; only a failure to build the u_k table at all is a
/// hard error.
pub fn verify_suite(scope: &SuiteScope) -> Result<VerificationReport, ConjectureError> {
    #[cfg(feature = "std")]
    let started = std::time::Instant::now();

    // The table must reach the largest exponent of two any job can need.
    let mut k_needed = scope.arnold_k_max.max(scope.pow2_max_exp).max(1);
    if scope.composite_limit >= 4 {
        k_needed = k_needed.max(scope.composite_limit.ilog2());
    }
    let table = arnold_sequence(k_needed, scope.arnold_guard)?;

    let jobs = suite_jobs(scope);
    let mut rows = run_jobs(&jobs, table.u(), scope);
    rows.push(seed_map_row(table.u()));

    let mut summary = SuiteSummary {
        total: rows.len(),
        ..SuiteSummary::default()
    };
    for row in &rows {
        match row.verdict {
            Verdict::Match => summary.matches += 1,
            Verdict::Mismatch => summary.mismatches += 1,
            Verdict::Inconclusive => summary.inconclusive += 1,
            Verdict::Defect => summary.defects += 1,
        }
    }

    #[cfg(feature = "std")]
    let elapsed_ms = Some(started.elapsed().as_millis() as u64);
    #[cfg(not(feature = "std"))]
    let elapsed_ms = None;

    Ok(VerificationReport {
        scope: scope.clone(),
        rows,
        summary,
        elapsed_ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const U18: [usize; 18] = [
        2, 4, 4, 4, 8, 8, 8, 8, 10, 12, 12, 16, 16, 16, 16, 16, 18, 20,
    ];

    #[test]
    fn knuth_buckholtz_periods() {
        assert_eq!(kb_d(3).unwrap(), 4);
        assert_eq!(kb_d(5).unwrap(), 4);
        assert_eq!(kb_d(7).unwrap(), 12);
        assert_eq!(kb_d(13).unwrap(), 12);
        assert_eq!(kb_d(199).unwrap(), 396);
    }

    #[test]
    fn kb_d_rejects_non_odd_primes() {
        assert_eq!(kb_d(2), Err(ConjectureError::NotOddPrime(2)));
        assert_eq!(kb_d(9), Err(ConjectureError::NotOddPrime(9)));
        assert_eq!(kb_d(15), Err(ConjectureError::NotOddPrime(15)));
        assert!(matches!(kb_d(1), Err(ConjectureError::Arith(_))));
    }

    #[test]
    fn predictions_for_prime_powers() {
        let p9 = predict(9, &U18).unwrap();
        assert_eq!((p9.preperiod, p9.period), (2, 12));
        assert_eq!(p9.provenance, Provenance::Conjecture);
        assert_eq!(p9.source, "odd-prime-power conjecture");

        let p7 = predict(7, &U18).unwrap();
        assert_eq!((p7.preperiod, p7.period), (1, 12));
        assert_eq!(p7.provenance, Provenance::Theorem);
        assert_eq!(p7.source, "knuth-buckholtz");

        let p125 = predict(125, &U18).unwrap();
        assert_eq!((p125.preperiod, p125.period), (3, 100));
    }

    #[test]
    fn predictions_for_powers_of_two() {
        let p2 = predict(2, &U18).unwrap();
        assert_eq!((p2.preperiod, p2.period), (2, 2));
        let p4 = predict(4, &U18).unwrap();
        assert_eq!((p4.preperiod, p4.period), (4, 2));
        let p8 = predict(8, &U18).unwrap();
        assert_eq!((p8.preperiod, p8.period), (4, 8));
        assert_eq!(p8.source, "power-of-two conjecture");
        let p256 = predict(256, &U18).unwrap();
        assert_eq!((p256.preperiod, p256.period), (8, 256));
    }

    #[test]
    fn predictions_glue_across_factors() {
        let p12 = predict(12, &U18).unwrap();
        assert_eq!((p12.preperiod, p12.period), (4, 4));
        assert_eq!(p12.provenance, Provenance::Conjecture);
        assert_eq!(p12.source, "crt");

        let p15 = predict(15, &U18).unwrap();
        assert_eq!((p15.preperiod, p15.period), (1, 4));

        let p100 = predict(100, &U18).unwrap();
        assert_eq!((p100.preperiod, p100.period), (4, 20));
    }

    #[test]
    fn prediction_needs_enough_arnold_terms() {
        assert_eq!(
            predict(512, &U18[..8]),
            Err(ConjectureError::NeedsArnoldTerm { k: 9 })
        );
        assert!(predict(512, &U18).is_ok());
    }

    #[test]
    fn prediction_rejects_out_of_range_moduli() {
        assert!(matches!(predict(1, &U18), Err(ConjectureError::Arith(_))));
        assert!(matches!(predict(0, &U18), Err(ConjectureError::Arith(_))));
    }

    #[test]
    fn bounds_check_passes_on_measured_profiles() {
        let profile = profile_euler(&Nat::from(9u32), 200, 3).unwrap();
        let check = check_kb_bounds(9, &profile).unwrap();
        assert_eq!(check.outcome, CheckOutcome::Pass);
        assert_eq!(check.max_preperiod, 2);
        assert_eq!(check.period_divisor, 12);

        let profile = profile_euler(&Nat::from(49u32), 400, 3).unwrap();
        let check = check_kb_bounds(49, &profile).unwrap();
        assert_eq!(check.outcome, CheckOutcome::Pass);
        assert_eq!(check.period_divisor, 84);
    }

    #[test]
    fn bounds_check_flags_violations() {
        let mut profile = profile_euler(&Nat::from(9u32), 200, 3).unwrap();
        profile.preperiod = 5;
        let check = check_kb_bounds(9, &profile).unwrap();
        assert_eq!(check.outcome, CheckOutcome::Violation);

        // A proper divisor of the true period is fine for k >= 2 but a
        // violation at k = 1, where the period is pinned exactly.
        let mut profile = profile_euler(&Nat::from(7u32), 200, 3).unwrap();
        profile.period = 6;
        let check = check_kb_bounds(7, &profile).unwrap();
        assert_eq!(check.outcome, CheckOutcome::Violation);
    }

    #[test]
    fn bounds_check_is_inconclusive_without_confirmation() {
        let profile = profile_euler(&Nat::from(9u32), 6, 3).unwrap();
        assert!(!profile.is_confirmed());
        let check = check_kb_bounds(9, &profile).unwrap();
        assert_eq!(check.outcome, CheckOutcome::Inconclusive);
    }

    #[test]
    fn bounds_check_rejects_bad_inputs() {
        let profile = profile_euler(&Nat::from(12u32), 100, 3).unwrap();
        assert_eq!(
            check_kb_bounds(12, &profile),
            Err(ConjectureError::NotOddPrimePower(12))
        );
        assert_eq!(
            check_kb_bounds(9, &profile),
            Err(ConjectureError::ProfileModulusMismatch)
        );
    }

    #[test]
    fn gluing_check_passes_where_proven() {
        for q in [6u64, 12, 15, 30] {
            let f = factorize(q).unwrap();
            let q_profile = profile_euler(&Nat::from(q), 400, 3).unwrap();
            let factor_profiles: Vec<_> = f
                .factors()
                .iter()
                .map(|&(p, a)| profile_euler(&Nat::from(p.pow(a)), 400, 3).unwrap())
                .collect();
            let check = crt_check(q, &q_profile, &factor_profiles).unwrap();
            assert_eq!(check.outcome, CheckOutcome::Pass, "q = {q}");
            assert!(check.expected_period.is_some());
        }
    }

    #[test]
    fn gluing_check_flags_doctored_profiles() {
        let q_profile = {
            let mut p = profile_euler(&Nat::from(15u32), 400, 3).unwrap();
            p.preperiod = 0;
            p
        };
        let factor_profiles = vec![
            profile_euler(&Nat::from(3u32), 400, 3).unwrap(),
            profile_euler(&Nat::from(5u32), 400, 3).unwrap(),
        ];
        let check = crt_check(15, &q_profile, &factor_profiles).unwrap();
        assert_eq!(check.outcome, CheckOutcome::Violation);
    }

    #[test]
    fn gluing_check_rejects_bad_inputs() {
        let q_profile = profile_euler(&Nat::from(9u32), 200, 3).unwrap();
        let factor = profile_euler(&Nat::from(3u32), 200, 3).unwrap();
        assert_eq!(
            crt_check(9, &q_profile, std::slice::from_ref(&factor)),
            Err(ConjectureError::NotComposite(9))
        );
        let q15 = profile_euler(&Nat::from(15u32), 400, 3).unwrap();
        assert_eq!(
            crt_check(15, &q15, std::slice::from_ref(&factor)),
            Err(ConjectureError::FactorMismatch)
        );
        // Right count, wrong moduli (5 swapped for 9).
        let wrong = vec![factor, profile_euler(&Nat::from(9u32), 200, 3).unwrap()];
        assert_eq!(
            crt_check(15, &q15, &wrong),
            Err(ConjectureError::FactorMismatch)
        );
    }

    #[test]
    fn small_suite_confirms_everything() {
        let scope = SuiteScope {
            odd_limit: 30,
            pow2_max_exp: 4,
            composite_limit: 30,
            arnold_k_max: 8,
            ..SuiteScope::default()
        };
        let report = verify_suite(&scope).unwrap();
        assert!(!report.has_mismatch_or_defect());
        assert!(!report.has_inconclusive());
        assert_eq!(report.summary.total, report.rows.len());
        assert_eq!(report.summary.matches, report.rows.len());

        // Odd prime powers below 30 (12), powers of two up to 16 (4),
        // composites up to 30 (13), plus the seed-map row.
        assert_eq!(report.rows.len(), 12 + 4 + 13 + 1);

        // Rows arrive sorted by modulus, seed-map row last.
        let qs: Vec<_> = report.rows.iter().filter_map(|r| r.q).collect();
        assert!(qs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(report.rows.last().unwrap().kind, RowKind::FTransform);
        assert!(report.rows.last().unwrap().q.is_none());

        let row9 = report.rows.iter().find(|r| r.q == Some(9)).unwrap();
        assert_eq!(row9.kind, RowKind::OddPrimePower);
        let pred = row9.prediction.as_ref().unwrap();
        assert_eq!((pred.preperiod, pred.period), (2, 12));
        let emp = row9.empirical.as_ref().unwrap();
        assert_eq!((emp.preperiod, emp.period), (2, 12));
        assert_eq!(row9.bounds.as_ref().unwrap().outcome, CheckOutcome::Pass);
        assert!(row9.witness_window.is_none());

        let row12 = report.rows.iter().find(|r| r.q == Some(12)).unwrap();
        assert_eq!(row12.kind, RowKind::Composite);
        assert_eq!(row12.crt.as_ref().unwrap().outcome, CheckOutcome::Pass);
        assert_eq!(row12.crt.as_ref().unwrap().expected_period, Some(4));
    }

    #[test]
    fn starved_windows_degrade_to_inconclusive() {
        let scope = SuiteScope {
            odd_limit: 4,
            pow2_max_exp: 1,
            composite_limit: 1,
            arnold_k_max: 2,
            max_window: 8,
            ..SuiteScope::default()
        };
        let report = verify_suite(&scope).unwrap();
        assert!(report.has_inconclusive());
        assert!(!report.has_mismatch_or_defect());
        let row3 = report.rows.iter().find(|r| r.q == Some(3)).unwrap();
        assert_eq!(row3.verdict, Verdict::Inconclusive);
        assert!(row3.note.contains("capped"));
    }

    #[test]
    fn sequential_worker_count_matches_parallel() {
        let scope = SuiteScope {
            odd_limit: 12,
            pow2_max_exp: 3,
            composite_limit: 12,
            arnold_k_max: 4,
            workers: 1,
            ..SuiteScope::default()
        };
        let one = verify_suite(&scope).unwrap();
        let many = verify_suite(&SuiteScope {
            workers: 4,
            ..scope.clone()
        })
        .unwrap();
        assert_eq!(one.rows, many.rows);
        assert_eq!(one.summary, many.summary);
    }

    #[test]
    fn report_flags_reflect_summary() {
        let mut report = verify_suite(&SuiteScope {
            odd_limit: 4,
            pow2_max_exp: 1,
            composite_limit: 1,
            arnold_k_max: 1,
            ..SuiteScope::default()
        })
        .unwrap();
        assert!(!report.has_mismatch_or_defect());
        report.summary.mismatches = 1;
        assert!(report.has_mismatch_or_defect());
    }
}
