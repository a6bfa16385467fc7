//! Polylogarithms of negative integer order as exact rational functions.
//!
//! Two constructions are kept side by side:
//!
//! * [`stirling_expansion`] is the Stirling expansion
//!   `sum_k k! S(n,k) (1/(1+t))^{k+1} (-t)^k`, taken literally in `t`;
//! * [`polylog_oracle`] applies `Li_{-n}(x) = x d/dx Li_{-(n-1)}(x)` to
//!   `Li_0(x) = x/(1-x)` by symbolic differentiation, in the variable `x`.
//!
//! They agree at `x = -t` for every `n >= 1`. At `n = 0` the literal sum is
//! `1/(1+t)` while `Li_0(-t) = -t/(1+t)`; [`polylog_neg_rf`] returns the
//! true function for all `n`.

use crate::arith::{factorial, int};
use crate::combinatorics::stirling2_row_shared;
use crate::poly::{Polynomial, RationalFunction};

/// Literal Stirling expansion of `Li_{-n}(-t)`, canonical, in `t`.
pub fn stirling_expansion(n: u32) -> RationalFunction {
    let n = n as usize;
    let row = stirling2_row_shared(n);
    // common denominator (1+t)^{n+1}
    let numerator = row
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (k, s)| {
            let sign = if k % 2 == 1 { -1 } else { 1 };
            let c = int(factorial(k as u64) * s * sign);
            let term = &Polynomial::monomial(c, k) * &Polynomial::linear_power(1, 1, n - k);
            &acc + &term
        });
    RationalFunction::new(numerator, Polynomial::linear_power(1, 1, n + 1))
        .expect("denominator is nonzero")
}

/// `Li_{-n}(-t)` in `t`, valid for every `n >= 0`.
pub fn polylog_neg_rf(n: u32) -> RationalFunction {
    if n == 0 {
        RationalFunction::new(
            Polynomial::from_ints(&[0, -1]),
            Polynomial::from_ints(&[1, 1]),
        )
        .expect("denominator is nonzero")
    } else {
        stirling_expansion(n)
    }
}

/// `Li_{-n}(x)` in `x` from the derivative recurrence.
pub fn polylog_oracle(n: u32) -> RationalFunction {
    let x = RationalFunction::from_polynomial(Polynomial::from_ints(&[0, 1]));
    let base = RationalFunction::new(
        Polynomial::from_ints(&[0, 1]),
        Polynomial::from_ints(&[1, -1]),
    )
    .expect("denominator is nonzero");
    (0..n).fold(base, |f, _| &x * &f.derivative())
}

/// Substitutes `x = -t` in a function of `x`.
pub fn at_negated(f: &RationalFunction) -> RationalFunction {
    f.negate_variable()
}
