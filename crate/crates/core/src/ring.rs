//! Coefficient rings the triangle is generated over: exact naturals,
//! residues modulo an arbitrary modulus, and a machine-word fast path for
//! moduli up to `2^63`.
//!
//! Triangle generation only ever adds, so a ring here is a zero, a one,
//! and an addition. Modular addition keeps elements reduced by a single
//! conditional subtraction and never divides.

use core::fmt;

use num_traits::{One, Zero};

use crate::arith::Nat;

/// An additive coefficient ring. Elements carry no modulus of their own;
/// the ring value is the context, which makes a mixed-ring addition
/// unrepresentable.
pub trait Ring: Clone {
    type Elem: Clone + PartialEq + Eq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// `acc = acc + x`, kept reduced.
    fn add_assign(&self, acc: &mut Self::Elem, x: &Self::Elem) {
        *acc = self.add(acc, x);
    }
}

/// Exact natural-number coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExactRing;

impl Ring for ExactRing {
    type Elem = Nat;

    fn zero(&self) -> Nat {
        Nat::zero()
    }

    fn one(&self) -> Nat {
        Nat::one()
    }

    fn add(&self, a: &Nat, b: &Nat) -> Nat {
        a + b
    }

    fn add_assign(&self, acc: &mut Nat, x: &Nat) {
        *acc += x;
    }
}

/// Residues modulo an arbitrary `q >= 1`, bignum widths included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModRing {
    modulus: Nat,
}

impl ModRing {
    /// Panics if `modulus` is zero.
    pub fn new(modulus: Nat) -> Self {
        assert!(!modulus.is_zero(), "modulus must be at least 1");
        ModRing { modulus }
    }

    /// The ring of residues mod `2^k`.
    pub fn pow2(k: u32) -> Self {
        ModRing::new(Nat::one() << k)
    }

    pub fn modulus(&self) -> &Nat {
        &self.modulus
    }

    pub fn reduce(&self, value: &Nat) -> Nat {
        value % &self.modulus
    }
}

impl Ring for ModRing {
    type Elem = Nat;

    fn zero(&self) -> Nat {
        Nat::zero()
    }

    fn one(&self) -> Nat {
        Nat::one() % &self.modulus
    }

    fn add(&self, a: &Nat, b: &Nat) -> Nat {
        let mut t = a + b;
        if t >= self.modulus {
            t -= &self.modulus;
        }
        t
    }

    fn add_assign(&self, acc: &mut Nat, x: &Nat) {
        *acc += x;
        if *acc >= self.modulus {
            *acc -= &self.modulus;
        }
    }
}

/// Residues modulo `1 <= q <= 2^63` in machine words. The bound keeps the
/// pre-reduction sum of two elements inside `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModRing64 {
    modulus: u64,
}

impl ModRing64 {
    pub const MAX_MODULUS: u64 = 1 << 63;

    /// Panics unless `1 <= modulus <= 2^63`.
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be at least 1");
        assert!(
            modulus <= Self::MAX_MODULUS,
            "modulus exceeds the machine-word ring bound 2^63"
        );
        ModRing64 { modulus }
    }

    /// The ring of residues mod `2^k`, `k <= 63`.
    pub fn pow2(k: u32) -> Self {
        assert!(k <= 63, "2^{k} exceeds the machine-word ring bound");
        ModRing64::new(1u64 << k)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce(&self, value: u64) -> u64 {
        value % self.modulus
    }
}

impl Ring for ModRing64 {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let mut t = a + b;
        if t >= self.modulus {
            t -= self.modulus;
        }
        t
    }
}
