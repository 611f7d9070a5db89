//! Sylvester waves of restricted partitions in multiprecision arithmetic.
//!
//! The crate computes the quasi-polynomial components `W_k(N,n)` of the
//! number of partitions of `n` into at most `N` parts by several independent
//! routes, the residues of the generating function at Farey points, the
//! branch zeros of the dilogarithm that govern the growth of the first wave,
//! and the saddle-point expansions built from them.

pub mod asymptotics;
pub mod combinatorics;
pub mod dilog;
pub mod error;
pub mod numerics;
pub mod waves;
pub mod wavesums;

pub use error::{Error, Result};
pub use numerics::{BigComplex, PrecisionContext, TruncatedSeries};
