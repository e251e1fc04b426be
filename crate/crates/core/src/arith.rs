//! Arithmetic primitives: unbounded naturals, residues, capped 2-adic
//! valuations, and prime-power factorization of small moduli.
//!
//! Everything here is exact. [`Nat`] backs the exact triangle; [`Residue`]
//! is a value tied to its modulus, with reduction a ring homomorphism from
//! `Nat`. A [`CappedValuation`] is the 2-adic valuation of a residue known
//! only modulo `2^K`: exact below the cap, saturated at it, with the
//! saturated value also absorbing the residue 0 (whose true valuation is
//! unbounded).

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

/// Unbounded nonnegative integer.
///
/// Closed under addition and under subtraction whenever the result stays
/// nonnegative; no overflow is observable at any width.
pub type Nat = BigUint;

/// Largest modulus accepted by [`factorize`]. Trial division is exact and
/// cheap up to here and is not meant for anything larger.
pub const FACTORIZE_MAX: u64 = 1 << 32;

/// Errors from the arithmetic primitives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    /// The operation needs a modulus of the form `2^K` with `K >= 1`.
    NotAPowerOfTwo,
    /// [`factorize`] accepts `2 <= q <= 2^32`.
    FactorizeRange(u64),
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::NotAPowerOfTwo => {
                write!(f, "modulus must be a power of two with exponent at least 1")
            }
            ArithError::FactorizeRange(q) => {
                write!(f, "factorize accepts 2 <= q <= 2^32, got {q}")
            }
        }
    }
}

impl core::error::Error for ArithError {}

/// A value reduced modulo a fixed modulus `q >= 1`.
///
/// Reduction is a ring homomorphism: reducing a sum equals adding the
/// reductions. Arithmetic between residues of different moduli is a caller
/// bug and panics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    value: Nat,
    modulus: Nat,
}

impl Residue {
    /// Reduces `value` modulo `modulus`.
    ///
    /// Panics if `modulus` is zero.
    pub fn reduce(value: &Nat, modulus: &Nat) -> Self {
        assert!(!modulus.is_zero(), "modulus must be at least 1");
        Residue {
            value: value % modulus,
            modulus: modulus.clone(),
        }
    }

    pub fn value(&self) -> &Nat {
        &self.value
    }

    pub fn modulus(&self) -> &Nat {
        &self.modulus
    }

    /// Residue addition. Panics if the moduli differ.
    pub fn add(&self, rhs: &Residue) -> Residue {
        assert_eq!(self.modulus, rhs.modulus, "residue moduli differ");
        let mut v = &self.value + &rhs.value;
        if v >= self.modulus {
            v -= &self.modulus;
        }
        Residue {
            value: v,
            modulus: self.modulus.clone(),
        }
    }
}

/// 2-adic valuation of a residue known modulo `2^cap`.
///
/// The valuation of a nonzero residue is exact when below the cap;
/// everything else, including the residue 0, saturates to a single top
/// value meaning "at least `cap`". The predicate `valuation < k` is
/// decidable for every `k <= cap` via [`CappedValuation::is_below`].
///
/// Ordering compares the saturated magnitude first, so within one cap it
/// is exactly the valuation order with top greatest; comparisons across
/// different caps are lexicographic rather than semantic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CappedValuation {
    clamped: u32,
    cap: u32,
}

impl CappedValuation {
    /// An exactly known valuation `v < cap`.
    pub fn exact(v: u32, cap: u32) -> Self {
        assert!(cap >= 1, "cap must be at least 1");
        assert!(v < cap, "exact valuation must lie below the cap");
        CappedValuation { clamped: v, cap }
    }

    /// The saturated valuation: at least `cap`, possibly infinite.
    pub fn top(cap: u32) -> Self {
        assert!(cap >= 1, "cap must be at least 1");
        CappedValuation { clamped: cap, cap }
    }

    /// Valuation of `value`, which must already be reduced mod `2^cap`.
    pub fn of_nat(value: &Nat, cap: u32) -> Self {
        debug_assert!(value.bits() <= cap as u64, "value not reduced mod 2^cap");
        match value.trailing_zeros() {
            None => CappedValuation::top(cap),
            Some(v) => CappedValuation::exact(v as u32, cap),
        }
    }

    /// Valuation of `value`, which must already be reduced mod `2^cap`.
    pub fn of_u64(value: u64, cap: u32) -> Self {
        debug_assert!(cap <= 64);
        debug_assert!(
            cap == 64 || value < 1u64 << cap,
            "value not reduced mod 2^cap"
        );
        if value == 0 {
            CappedValuation::top(cap)
        } else {
            CappedValuation::exact(value.trailing_zeros(), cap)
        }
    }

    pub fn cap(self) -> u32 {
        self.cap
    }

    pub fn is_top(self) -> bool {
        self.clamped == self.cap
    }

    /// The exact exponent, or `None` when saturated.
    pub fn exponent(self) -> Option<u32> {
        if self.is_top() {
            None
        } else {
            Some(self.clamped)
        }
    }

    /// Saturated magnitude: the exponent clamped to the cap.
    pub fn clamped(self) -> u32 {
        self.clamped
    }

    /// Decides `valuation < k`; meaningful for `k <= cap`.
    pub fn is_below(self, k: u32) -> bool {
        debug_assert!(k <= self.cap, "threshold exceeds the cap");
        self.clamped < k
    }
}

impl fmt::Display for CappedValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_top() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.clamped)
        }
    }
}

/// 2-adic valuation of a residue whose modulus is `2^K`, `K >= 1`.
pub fn v2_capped(x: &Residue) -> Result<CappedValuation, ArithError> {
    let m = x.modulus();
    if m.count_ones() != 1 {
        return Err(ArithError::NotAPowerOfTwo);
    }
    let k = m.trailing_zeros().expect("power of two is nonzero");
    if k == 0 {
        return Err(ArithError::NotAPowerOfTwo);
    }
    let cap = u32::try_from(k).expect("valuation cap exceeds u32");
    Ok(CappedValuation::of_nat(x.value(), cap))
}

/// Prime-power decomposition `q = prod p_i^{a_i}` with the primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimePowerFactorization {
    /// The `(prime, exponent)` pairs in ascending prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Reconstructs the factored value.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, a)| p.pow(a)).product()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// True when the value is `p^k` for a single odd prime p.
    pub fn is_odd_prime_power(&self) -> bool {
        self.is_prime_power() && self.factors[0].0 != 2
    }
}

/// Factors `q` by trial division. Accepts `2 <= q <= 2^32`.
pub fn factorize(q: u64) -> Result<PrimePowerFactorization, ArithError> {
    if !(2..=FACTORIZE_MAX).contains(&q) {
        return Err(ArithError::FactorizeRange(q));
    }
    let mut rem = q;
    let mut factors = Vec::new();
    let mut push = |p: u64, rem: &mut u64| {
        let mut a = 0u32;
        while (*rem).is_multiple_of(p) {
            *rem /= p;
            a += 1;
        }
        if a > 0 {
            factors.push((p, a));
        }
    };
    push(2, &mut rem);
    let mut p = 3u64;
    while p * p <= rem {
        push(p, &mut rem);
        p += 2;
    }
    if rem > 1 {
        factors.push((rem, 1));
    }
    Ok(PrimePowerFactorization { factors })
}
