//! Euler up/down numbers and the machinery around their behavior modulo q.
//!
//! The library computes the Seidel-Entringer-Arnold triangle (exactly and
//! over residue rings), extracts the Euler numbers E_n as row sums,
//! empirically detects the preperiod s(q) and minimal period d(q) of the
//! sequence (E_n mod q), builds the 2-adic valuation triangle together with
//! Arnold's diagonal-minimum sequence u_k, iterates the doubling map f that
//! conjecturally generates u, and runs a verification harness comparing
//! predicted (s, d) values against detected ones across a scope of moduli.
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std`
//! feature additionally enables a threaded runner and wall-clock metadata
//! in the verification harness.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod arith;
pub mod arnold;
pub mod conjectures;
pub mod ftransform;
pub mod periodicity;
pub mod ring;
pub mod seidel;

pub use arith::{factorize, v2_capped, CappedValuation, Nat, PrimePowerFactorization, Residue};
pub use arnold::{arnold_sequence, arnold_table, diagonal_minima, valuation_row, ArnoldTable};
pub use conjectures::{
    check_kb_bounds, crt_check, kb_d, predict, verify_suite, Prediction, SuiteScope, Verdict,
    VerificationReport,
};
pub use ftransform::{apply_f, f_transform, FiniteSeq};
pub use periodicity::{detect, profile_euler, PeriodProfile, ProfileStatus};
pub use ring::{ExactRing, ModRing, ModRing64, Ring};
pub use seidel::{brute_force_entringer, euler_sequence, next_row, triangle_rows, TriangleRow};
