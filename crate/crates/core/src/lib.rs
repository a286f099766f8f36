//! Exact verification of congruences and identities for central q-binomial
//! sums modulo cyclotomic polynomials, together with their integer
//! counterparts modulo prime powers.
//!
//! The crate is layered bottom-up:
//!
//! - [`zpoly`]: Laurent polynomials, truncated power series and bivariate
//!   polynomials over arbitrary-precision integers.
//! - [`qcore`]: q-binomials, q-shifted factorials, cyclotomic polynomials,
//!   q-Fibonacci polynomials and Jacobi symbols.
//! - [`cycmod`]: reduction and congruence testing modulo `Phi_n(q)`, its
//!   powers, and products of cyclotomic polynomials.
//! - [`qverify`]: registries of named polynomial identities and congruences.
//! - [`arith`]: integer congruences for central binomial sums modulo prime
//!   powers, with valuation tracking.
//! - [`catalog`]: a single view over every registry plus the sweep driver.

pub mod arith;
pub mod catalog;
pub mod check;
pub mod cycmod;
pub mod qcore;
pub mod qverify;
pub mod zpoly;

pub use catalog::{Catalog, RangeSpec, SuiteError};
pub use check::{CheckResult, Params, Status, Tag};
