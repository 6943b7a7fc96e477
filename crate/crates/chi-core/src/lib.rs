//! Exact symbolic kernels for the `chi-kit` verification suite.
//!
//! Everything in this crate is pure computation over arbitrary-precision
//! rationals: sparse multivariate polynomials and canonical rational
//! functions, shuffle combinatorics and formal sums of coordinate maps
//! between simplices and cubes, lattice-point transforms of prefix-sum
//! cones, an exterior calculus with rational-function coefficients, and a
//! total-complex engine (multicomplex differentials, exterior products,
//! cone pairings, a first spectral-sequence page).
//!
//! The crate is `no_std` + `alloc`; IO, timing, JSON and the CLI live in
//! the companion `chi-kit` crate. All containers are ordered (`BTreeMap`)
//! so every result is deterministic.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod constants;
pub mod cones;
pub mod character;
pub mod e1;
pub mod factored;
pub mod forms;
pub mod gcd;
pub mod linalg;
pub mod maps;
pub mod perm;
pub mod poly;
pub mod ratfunc;
pub mod report;
pub mod rng;
pub mod total;

pub use poly::{Monomial, MultiPoly, Rat, Var};
pub use ratfunc::RatFunc;
pub use report::VerificationReport;
