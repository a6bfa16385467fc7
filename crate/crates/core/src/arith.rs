//! Exact integer and rational arithmetic.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value
//! reduced with a positive denominator, so equality is a field-wise
//! comparison. The helpers here add the checked constructor plus the
//! factorial, binomial and integer Beta values used by the Bernoulli sums.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision reduced fraction.
pub type Rational = BigRational;

/// Builds the canonical rational `num/den`.
pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let num = num.into();
    let den = den.into();
    if den.is_zero() {
        return Err(Error::Domain("zero denominator".into()));
    }
    Ok(BigRational::new(num, den))
}

/// Integer as a rational with denominator 1.
pub fn int(value: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(value.into())
}

/// Exact `n!`.
pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `[0!, 1!, ..., n!]`.
pub fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = BigInt::one();
    out.push(acc.clone());
    for k in 1..=n {
        acc *= k;
        out.push(acc.clone());
    }
    out
}

/// Exact `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `B(a, b) = (a-1)! (b-1)! / (a+b-1)!` for positive integers.
pub fn beta_integer(a: i64, b: i64) -> Result<Rational> {
    if a <= 0 || b <= 0 {
        return Err(Error::Domain(format!(
            "beta_integer needs positive arguments, got ({a}, {b})"
        )));
    }
    let (a, b) = (a as u64, b as u64);
    rational(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))
}

/// Renders `p/q`, or `p` when `q = 1`.
pub fn render(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `p`, `p/q` or a terminating decimal such as `-0.25` into a
/// canonical rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Argument(format!("not a rational number: {text:?}"));
    let text = text.trim();
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
        return rational(digits, BigInt::from(10u32).pow(frac.len() as u32));
    }
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            rational(p, q)
        }
        None => Ok(int(text.parse::<BigInt>().map_err(|_| bad())?)),
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(value: &Rational) -> i32 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rational {
        rational(p, q).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let half = r(2, 4);
        assert_eq!(half.numer(), &BigInt::from(1));
        assert_eq!(half.denom(), &BigInt::from(2));

        let neg = r(1, -3);
        assert_eq!(neg.numer(), &BigInt::from(-1));
        assert_eq!(neg.denom(), &BigInt::from(3));

        let zero = r(0, 5);
        assert_eq!(zero.numer(), &BigInt::from(0));
        assert_eq!(zero.denom(), &BigInt::from(1));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(rational(1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        // oracle: repeated u128 multiplication
        let mut oracle: u128 = 1;
        for k in 1..=20u128 {
            oracle *= k;
        }
        assert_eq!(oracle, 2432902008176640000);
        assert_eq!(factorial(20), BigInt::from(oracle));
        assert_eq!(factorials(20)[20], factorial(20));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(7, 0), BigInt::from(1));
        assert_eq!(binomial(3, -1), BigInt::from(0));
        assert_eq!(binomial(3, 4), BigInt::from(0));

        // Pascal-triangle oracle
        let mut row = vec![BigInt::one()];
        for _ in 0..10 {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        assert_eq!(row[5], BigInt::from(252));
        assert_eq!(binomial(10, 5), row[5]);
    }

    #[test]
    fn beta_values() {
        assert_eq!(beta_integer(1, 1).unwrap(), int(1));
        assert_eq!(beta_integer(2, 3).unwrap(), r(1, 12));
        assert_eq!(beta_integer(3, 2).unwrap(), r(1, 12));
        assert!(matches!(beta_integer(0, 2), Err(Error::Domain(_))));
        assert!(matches!(beta_integer(2, -1), Err(Error::Domain(_))));
    }

    #[test]
    fn beta_symmetric() {
        for a in 1..=12 {
            for b in 1..=12 {
                assert_eq!(beta_integer(a, b).unwrap(), beta_integer(b, a).unwrap());
            }
        }
    }

    #[test]
    fn binomial_factorial_identity() {
        for n in 0..=30u64 {
            for k in 0..=n {
                assert_eq!(
                    binomial(n, k as i64) * factorial(k) * factorial(n - k),
                    factorial(n)
                );
            }
        }
    }

    #[test]
    fn beta_matches_binomial_denominator() {
        for k in 0..=20u64 {
            for l in 0..=20u64 {
                let beta = beta_integer(k as i64 + 1, l as i64 + 1).unwrap();
                let ratio = rational(factorial(k) * factorial(l), factorial(k + l + 1)).unwrap();
                let denom = BigInt::from(k + l + 1) * binomial(k + l, l as i64);
                assert_eq!(beta, ratio);
                assert_eq!(beta, rational(1, denom).unwrap());
            }
        }
    }

    #[test]
    fn render_and_parse() {
        assert_eq!(render(&r(-691, 2730)), "-691/2730");
        assert_eq!(render(&int(7)), "7");
        assert_eq!(parse_rational("7/3").unwrap(), r(7, 3));
        assert_eq!(parse_rational("-4/6").unwrap(), r(-2, 3));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_rational("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_rational("-2.5").unwrap(), r(-5, 2));
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("1.2e3").is_err());
    }

    fn any_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(p, q)| r(p, q))
    }

    proptest! {
        #[test]
        fn field_laws(a in any_rational(), b in any_rational()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a.clone());
            }
            let sum = &a + &b;
            prop_assert!(sum.denom().is_positive());
            prop_assert!(sum.numer().gcd(sum.denom()).is_one());
        }
    }
}
