//! Verification toolkit for totient congruences on `x^n ± y^n` and their
//! quotients by `x ± y`.
//!
//! The crate checks, instance by instance, that `n` divides Euler's totient of
//! the target value. Three routes are available:
//!
//! * **direct**: factor the target through its cyclotomic decomposition and
//!   compute `φ` exactly;
//! * **existence**: show that the relevant cyclotomic value has a prime
//!   factor `q ≡ 1 (mod n)` without factoring anything;
//! * **explicit**: factor the cyclotomic value and exhibit such a `q`.
//!
//! [`harness`] runs these checks over whole parameter grids with a persistent
//! factorization cache, and [`cli`] exposes everything on the command line.

pub mod arith;
pub mod cli;
pub mod cyclotomic;
pub mod decimal;
pub mod error;
pub mod harness;
pub mod theorems;

pub use arith::Natural;
pub use error::{Error, Result};
