//! Bernoulli numbers by three independent routes, plus zeta at the
//! non-positive integers.
//!
//! Convention: `B_1 = -1/2`, the value produced by the generating function
//! `t/(e^t - 1)`. The `+1/2` convention is not supported.
//!
//! * [`bernoulli_recurrence`] is the ground truth. It memoizes `B_0..=B_n` in
//!   an internally synchronized [`BernoulliTable`].
//! * [`bernoulli_stirling_sum`] is the single Stirling sum
//!   `B_n = sum_k (-1)^k k! S(n,k) / (k+1)`.
//! * [`bernoulli_split`] is the double Stirling sum that produces `B_{m+n}`
//!   from rows `n` and `m` of the Stirling triangle.
//!
//! Both sums are stateless apart from the shared Stirling table.

use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{binomial, factorials, int, rational, Rational};
use crate::combinatorics::stirling2_row_shared;
use crate::error::{Error, Result};
use crate::par::Execution;

/// Evaluation strategy for `B_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BernoulliMethod {
    Recurrence,
    StirlingSum,
    /// Double sum over rows `n` and `m`; evaluates `B_{m+n}`.
    Split {
        m: u32,
        n: u32,
    },
}

impl fmt::Display for BernoulliMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BernoulliMethod::Recurrence => f.write_str("recurrence"),
            BernoulliMethod::StirlingSum => f.write_str("stirling-sum"),
            BernoulliMethod::Split { .. } => f.write_str("split"),
        }
    }
}

/// Memo of `B_0, B_1, ...` computed by the recurrence
/// `B_n = -1/(n+1) * sum_{j<n} C(n+1, j) B_j`.
#[derive(Debug, Default)]
pub struct BernoulliTable {
    values: RwLock<Vec<Rational>>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: usize) -> Rational {
        if let Some(value) = self.values.read().unwrap().get(n) {
            return value.clone();
        }
        let mut values = self.values.write().unwrap();
        if values.is_empty() {
            values.push(int(1));
        }
        while values.len() <= n {
            let next = values.len() as u64;
            let sum = values
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (j, b)| {
                    acc + b * int(binomial(next + 1, j as i64))
                });
            values.push(-sum / int(next + 1));
        }
        values[n].clone()
    }
}

fn shared() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(BernoulliTable::new)
}

/// `B_n` from the recurrence (shared memo).
pub fn bernoulli_recurrence(n: u32) -> Rational {
    shared().get(n as usize)
}

fn signed(value: BigInt, odd: bool) -> BigInt {
    if odd {
        -value
    } else {
        value
    }
}

/// `B_n = sum_{k=0}^{n} (-1)^k k! S(n,k) / (k+1)`.
pub fn bernoulli_stirling_sum(n: u32) -> Rational {
    let n = n as usize;
    let fact = factorials(n + 1);
    let row = stirling2_row_shared(n);
    // common denominator (n+1)!
    let total: BigInt = row
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(k, s)| signed(&fact[k] * s * (&fact[n + 1] / (k + 1)), k % 2 == 1))
        .sum();
    rational(total, fact[n + 1].clone()).expect("factorial is positive")
}

/// `B_{m+n}` as the double sum over `0 <= k <= n`, `0 <= l <= m` of
/// `(-1)^{k+l} k! l! S(n,k) S(m,l) / ((k+l+1) C(k+l, l))`.
///
/// The denominator is taken in its factorial form `k! l! / (k+l+1)!`, and
/// every term is scaled to the common denominator `(m+n+1)!` so the sum runs
/// over integers.
pub fn bernoulli_split(m: u32, n: u32) -> Rational {
    let (m, n) = (m as usize, n as usize);
    let top = m + n + 1;
    let fact = factorials(top);
    let row_n = stirling2_row_shared(n);
    let row_m = stirling2_row_shared(m);

    let mut total = BigInt::zero();
    for (k, s_nk) in row_n.iter().enumerate() {
        if s_nk.is_zero() {
            continue;
        }
        let outer = &fact[k] * &fact[k] * s_nk;
        let mut inner = BigInt::zero();
        for (l, s_ml) in row_m.iter().enumerate() {
            if s_ml.is_zero() {
                continue;
            }
            // (m+n+1)! / (k+l+1)! is an integer since k+l <= m+n
            let scale = &fact[top] / &fact[k + l + 1];
            let term = &fact[l] * &fact[l] * s_ml * scale;
            inner += signed(term, l % 2 == 1);
        }
        total += signed(outer * inner, k % 2 == 1);
    }
    rational(total, fact[top].clone()).expect("factorial is positive")
}

/// `B_n` by the selected method. `Split { m, n: n2 }` requires `m + n2 = n`.
pub fn bernoulli(n: u32, method: BernoulliMethod) -> Result<Rational> {
    match method {
        BernoulliMethod::Recurrence => Ok(bernoulli_recurrence(n)),
        BernoulliMethod::StirlingSum => Ok(bernoulli_stirling_sum(n)),
        BernoulliMethod::Split { m, n: rest } => {
            if u64::from(m) + u64::from(rest) != u64::from(n) {
                return Err(Error::Argument(format!(
                    "split ({m}, {rest}) does not sum to {n}"
                )));
            }
            Ok(bernoulli_split(m, rest))
        }
    }
}

/// Exact `zeta(s)` for `s <= 0`.
///
/// `zeta(0) = -1/2` is fixed directly. For `N = 1 - s >= 2` the value is
/// `-B_N / N`. The relation `-N zeta(1-N) = B_N` is not applied at `N = 1`,
/// where it would give `+1/2`.
pub fn zeta_nonpositive(s: i64) -> Result<Rational> {
    if s > 0 {
        return Err(Error::Domain(format!(
            "zeta_nonpositive needs s <= 0, got {s}"
        )));
    }
    if s == 0 {
        return rational(-1, 2);
    }
    let big_n = 1 - s;
    let index =
        u32::try_from(big_n).map_err(|_| Error::Domain(format!("s = {s} is out of range")))?;
    Ok(-bernoulli_recurrence(index) / int(big_n))
}

/// Outcome of comparing one split against the recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCheck {
    pub m: u32,
    pub n: u32,
    pub value: Rational,
    pub matches: bool,
}

/// Evaluates the double sum for every `(m, n)` in `0..=max_m x 0..=max_n`
/// and compares each with the recurrence. Rows come back in `(m, n)` order.
pub fn split_grid(max_m: u32, max_n: u32, execution: Execution) -> Vec<SplitCheck> {
    // warm the shared memo tables before fanning out
    let _ = bernoulli_recurrence(max_m + max_n);
    let _ = stirling2_row_shared(max_m.max(max_n) as usize);
    let cells: Vec<(u32, u32)> = (0..=max_m)
        .flat_map(|m| (0..=max_n).map(move |n| (m, n)))
        .collect();
    execution.map(cells, |(m, n)| {
        let value = bernoulli_split(m, n);
        let matches = value == bernoulli_recurrence(m + n);
        SplitCheck {
            m,
            n,
            value,
            matches,
        }
    })
}

/// All `N + 1` splits of `B_N`, in order `m = 0..=N`.
pub fn split_sweep(total: u32, execution: Execution) -> Vec<Rational> {
    let splits: Vec<u32> = (0..=total).collect();
    execution.map(splits, |m| bernoulli_split(m, total - m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::signum;

    fn r(p: i64, q: i64) -> Rational {
        rational(p, q).unwrap()
    }

    /// Power-series oracle: invert (e^t - 1)/t = sum t^j/(j+1)! term by term
    /// and read B_n = n! [t^n].
    fn series_oracle(max: usize) -> Vec<Rational> {
        let fact = factorials(max + 2);
        let divisor: Vec<Rational> = (0..=max)
            .map(|j| rational(1, fact[j + 1].clone()).unwrap())
            .collect();
        let mut inverse: Vec<Rational> = Vec::with_capacity(max + 1);
        for i in 0..=max {
            if i == 0 {
                inverse.push(int(1));
                continue;
            }
            let acc = (1..=i).fold(Rational::zero(), |acc, j| {
                acc + &divisor[j] * &inverse[i - j]
            });
            inverse.push(-acc);
        }
        inverse
            .into_iter()
            .enumerate()
            .map(|(n, c)| c * int(fact[n].clone()))
            .collect()
    }

    #[test]
    fn recurrence_spot_values() {
        assert_eq!(bernoulli_recurrence(0), int(1));
        assert_eq!(bernoulli_recurrence(1), r(-1, 2));
        assert_eq!(bernoulli_recurrence(2), r(1, 6));
        assert_eq!(bernoulli_recurrence(12), r(-691, 2730));
    }

    #[test]
    fn recurrence_matches_series_oracle() {
        let oracle = series_oracle(40);
        for (n, expected) in oracle.iter().enumerate() {
            assert_eq!(&bernoulli_recurrence(n as u32), expected, "n = {n}");
        }
    }

    #[test]
    fn stirling_sum_spot_values() {
        assert_eq!(bernoulli_stirling_sum(0), int(1));
        assert_eq!(bernoulli_stirling_sum(1), r(-1, 2));
        assert_eq!(bernoulli_stirling_sum(4), r(-1, 30));
    }

    #[test]
    fn stirling_sum_matches_recurrence() {
        for n in 0..=100 {
            assert_eq!(
                bernoulli_stirling_sum(n),
                bernoulli_recurrence(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn split_spot_values() {
        assert_eq!(bernoulli_split(0, 0), int(1));
        assert_eq!(bernoulli_split(1, 1), r(1, 6));
        assert_eq!(bernoulli_split(1, 2), int(0));
        assert_eq!(bernoulli_split(1, 0), r(-1, 2));
    }

    /// Literal form of the double sum: binomial denominator, rational terms.
    fn split_literal(m: u64, n: u64) -> Rational {
        let mut acc = Rational::zero();
        for k in 0..=n {
            for l in 0..=m {
                let s = crate::combinatorics::stirling2(n as usize, k as i64)
                    * crate::combinatorics::stirling2(m as usize, l as i64);
                let num = crate::arith::factorial(k) * crate::arith::factorial(l) * s;
                let den = BigInt::from(k + l + 1) * binomial(k + l, l as i64);
                let term = rational(num, den).unwrap();
                if (k + l) % 2 == 1 {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
        }
        acc
    }

    #[test]
    fn split_matches_literal_binomial_form() {
        for m in 0..=8 {
            for n in 0..=8 {
                assert_eq!(bernoulli_split(m, n), split_literal(m as u64, n as u64));
            }
        }
    }

    #[test]
    fn split_reduces_to_stirling_sum() {
        for n in 0..=30 {
            assert_eq!(bernoulli_split(0, n), bernoulli_stirling_sum(n), "n = {n}");
        }
    }

    #[test]
    fn split_symmetric() {
        for m in 0..=30 {
            for n in m..=30 {
                assert_eq!(bernoulli_split(m, n), bernoulli_split(n, m));
            }
        }
    }

    #[test]
    fn odd_indices_vanish() {
        for k in 1..=20 {
            assert!(bernoulli_recurrence(2 * k + 1).is_zero());
        }
    }

    #[test]
    fn even_sign_pattern() {
        for k in 1..=15u32 {
            let expected = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(signum(&bernoulli_recurrence(2 * k)), expected, "k = {k}");
        }
    }

    #[test]
    fn dispatcher() {
        assert_eq!(bernoulli(2, BernoulliMethod::Recurrence).unwrap(), r(1, 6));
        assert_eq!(bernoulli(2, BernoulliMethod::StirlingSum).unwrap(), r(1, 6));
        assert_eq!(
            bernoulli(2, BernoulliMethod::Split { m: 1, n: 1 }).unwrap(),
            r(1, 6)
        );
        assert!(matches!(
            bernoulli(3, BernoulliMethod::Split { m: 0, n: 2 }),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_nonpositive(-1).unwrap(), r(-1, 12));
        assert_eq!(zeta_nonpositive(0).unwrap(), r(-1, 2));
        assert_eq!(zeta_nonpositive(-2).unwrap(), int(0));
        assert_eq!(zeta_nonpositive(-3).unwrap(), r(1, 120));
        assert!(matches!(zeta_nonpositive(1), Err(Error::Domain(_))));
    }

    #[test]
    fn zeta_bernoulli_relation() {
        for big_n in 2..=40i64 {
            let zeta = zeta_nonpositive(1 - big_n).unwrap();
            assert_eq!(-int(big_n) * zeta, bernoulli_recurrence(big_n as u32));
        }
        for k in 1..=20 {
            assert!(zeta_nonpositive(-2 * k).unwrap().is_zero());
        }
    }

    #[test]
    fn grid_and_sweep() {
        let seq = split_grid(6, 6, Execution::Sequential);
        let par = split_grid(6, 6, Execution::Parallel);
        assert_eq!(seq, par);
        assert_eq!(seq.len(), 49);
        assert!(seq.iter().all(|c| c.matches));

        let sweep = split_sweep(10, Execution::Parallel);
        assert_eq!(sweep.len(), 11);
        assert!(sweep.iter().all(|v| *v == r(5, 66)));
    }

    #[test]
    fn fresh_table_is_independent() {
        let table = BernoulliTable::new();
        assert_eq!(table.get(30), bernoulli_recurrence(30));
        assert_eq!(table.get(4), r(-1, 30));
    }
}
