//! Exact Bernoulli numbers from Stirling numbers of the second kind.
//!
//! The crate evaluates `B_{m+n}` as a double sum over rows `m` and `n` of the
//! Stirling triangle and checks it against an independent recurrence, the
//! single-row Stirling sum, negative-order polylogarithms, integer Beta
//! values, a half-line quadrature and zeta values at the non-positive
//! integers.
//!
//! Grid workloads take an [`Execution`]; with the default `parallel` feature
//! they run on rayon, otherwise sequentially. Results are identical either way.

pub mod arith;
pub mod bernoulli;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod par;
pub mod poly;
pub mod polylog;
pub mod quadrature;

pub use arith::{beta_integer, binomial, factorial, rational, Rational};
pub use bernoulli::{
    bernoulli, bernoulli_recurrence, bernoulli_split, bernoulli_stirling_sum, zeta_nonpositive,
    BernoulliMethod,
};
pub use combinatorics::{bell, stirling2, stirling2_bruteforce, stirling2_row, StirlingTriangle};
pub use error::{Error, Result};
pub use par::Execution;
pub use poly::{Polynomial, RationalFunction};
pub use polylog::{polylog_neg_rf, polylog_oracle, stirling_expansion};
pub use quadrature::{
    beta_quadrature_check, integrate_halfline, verify_integral, GaussLegendre, QuadratureReport,
};
