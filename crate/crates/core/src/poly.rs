//! Dense univariate polynomials and rational functions over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{int, render, Rational};
use crate::error::{Error, Result};

/// Polynomial with rational coefficients in ascending degree order.
/// Trailing zeros are always trimmed, so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `(a + b x)^k`.
    pub fn linear_power(a: i64, b: i64, k: usize) -> Self {
        let base = Self::from_ints(&[a, b]);
        (0..k).fold(Self::one(), |acc, _| &acc * &base)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// `p(-x)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^d p(1/x)` with `d = deg p`.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => self.scale(&lead.recip()),
            None => Self::zero(),
        }
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::Domain("polynomial division by zero".into()));
        };
        let lead_inv = divisor.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let Some(ds) = self.degree().filter(|&d| d >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![Rational::zero(); ds - dd + 1];
        for i in (0..=ds - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    ///
    /// Runs a primitive pseudo-remainder sequence on integer coefficients,
    /// which avoids the coefficient blow-up of Euclid over the rationals.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (primitive_part(self), primitive_part(other));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive_part_int(pseudo_remainder(&a, &b));
            a = b;
            b = r;
        }
        Self::new(a.into_iter().map(BigRational::from_integer).collect()).monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Writes the polynomial in descending powers of `var`.
    pub fn display<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, var }
    }
}

/// Integer polynomial with unit content and positive leading coefficient,
/// proportional to `p`.
fn primitive_part(p: &Polynomial) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    primitive_part_int(
        p.coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect(),
    )
}

fn primitive_part_int(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    let Some(lead) = coeffs.last() else {
        return coeffs;
    };
    let mut content = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if lead.is_negative() {
        content = -content;
    }
    coeffs.iter().map(|c| c / &content).collect()
}

/// Remainder of `lc(b)^(deg a - deg b + 1) * a` divided by `b`, over the integers.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut rem = a.to_vec();
    while rem.len() > db && !rem.is_empty() {
        let top = rem.len() - 1;
        let c = rem[top].clone();
        for r in rem.iter_mut() {
            *r *= lead;
        }
        let shift = top - db;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
    }
    rem
}

pub(crate) fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            let coeff = if mag.is_integer() {
                render(&mag)
            } else {
                format!("({})", render(&mag))
            };
            match i {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !mag.is_one() {
                        f.write_str(&coeff)?;
                    }
                    f.write_str(self.var)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        Polynomial::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

/// Quotient of polynomials kept in canonical form: no common factor and a
/// monic denominator. Canonical forms compare coefficient-wise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

/// Default lower bound on `|denominator(t)|` accepted by float evaluation.
pub const UNDERFLOW_FLOOR: f64 = 1e-290;

impl RationalFunction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Domain("zero denominator polynomial".into()));
        }
        Ok(Self::canonical(numerator, denominator))
    }

    fn canonical(numerator: Polynomial, denominator: Polynomial) -> Self {
        if numerator.is_zero() {
            return RationalFunction {
                numerator,
                denominator: Polynomial::one(),
            };
        }
        let g = numerator.gcd(&denominator);
        let (mut num, _) = numerator.div_rem(&g).expect("gcd is nonzero");
        let (mut den, _) = denominator.div_rem(&g).expect("gcd is nonzero");
        let lead = den.leading().expect("denominator is nonzero").recip();
        num = num.scale(&lead);
        den = den.scale(&lead);
        RationalFunction {
            numerator: num,
            denominator: den,
        }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction {
            numerator: p,
            denominator: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    /// Re-runs canonicalization; a no-op on any value built by this type.
    pub fn recanonicalize(&self) -> Self {
        Self::canonical(self.numerator.clone(), self.denominator.clone())
    }

    pub fn derivative(&self) -> Self {
        let (p, q) = (&self.numerator, &self.denominator);
        let num = &(&p.derivative() * q) - &(p * &q.derivative());
        Self::canonical(num, q * q)
    }

    /// `f(-x)`.
    pub fn negate_variable(&self) -> Self {
        Self::canonical(
            self.numerator.negate_variable(),
            self.denominator.negate_variable(),
        )
    }

    /// `g(t) = f(1/t)`, cleared to polynomial form.
    pub fn compose_reciprocal(&self) -> Self {
        if self.numerator.is_zero() {
            return self.clone();
        }
        let dp = self.numerator.degree().unwrap();
        let dq = self.denominator.degree().unwrap();
        // P(1/t) / Q(1/t) = rev(P) t^dq / (rev(Q) t^dp)
        Self::canonical(
            self.numerator.reversed().shift(dq),
            self.denominator.reversed().shift(dp),
        )
    }

    pub fn eval_exact(&self, t: &Rational) -> Result<Rational> {
        let den = self.denominator.eval(t);
        if den.is_zero() {
            return Err(Error::Evaluation(format!("pole at {}", render(t))));
        }
        Ok(self.numerator.eval(t) / den)
    }

    pub fn eval_float(&self, t: f64) -> Result<f64> {
        FloatRationalFunction::from(self).eval(t)
    }

    pub fn display<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        RfDisplay { rf: self, var }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.numerator * &rhs.denominator) + &(&rhs.numerator * &self.denominator);
        RationalFunction::canonical(num, &self.denominator * &rhs.denominator)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.numerator * &rhs.denominator) - &(&rhs.numerator * &self.denominator);
        RationalFunction::canonical(num, &self.denominator * &rhs.denominator)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(
            &self.numerator * &rhs.numerator,
            &self.denominator * &rhs.denominator,
        )
    }
}

struct RfDisplay<'a> {
    rf: &'a RationalFunction,
    var: &'a str,
}

impl fmt::Display for RfDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = &self.rf.numerator;
        let den = &self.rf.denominator;
        let wrap = |p: &Polynomial| p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
        if wrap(num) {
            write!(f, "({})", num.display(self.var))?;
        } else {
            write!(f, "{}", num.display(self.var))?;
        }
        if den.degree() == Some(0) {
            return Ok(());
        }
        if wrap(den) {
            write!(f, "/({})", den.display(self.var))
        } else {
            write!(f, "/{}", den.display(self.var))
        }
    }
}

/// Rational function with coefficients rounded to `f64` once, for repeated
/// Horner evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatRationalFunction {
    numerator: Vec<f64>,
    denominator: Vec<f64>,
    floor: f64,
}

impl From<&RationalFunction> for FloatRationalFunction {
    fn from(rf: &RationalFunction) -> Self {
        FloatRationalFunction {
            numerator: rf.numerator.to_f64_coeffs(),
            denominator: rf.denominator.to_f64_coeffs(),
            floor: UNDERFLOW_FLOOR,
        }
    }
}

impl FloatRationalFunction {
    pub fn with_floor(mut self, floor: f64) -> Self {
        self.floor = floor;
        self
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        let den = horner(&self.denominator, t);
        if den.is_nan() || den.abs() < self.floor {
            return Err(Error::Evaluation(format!(
                "denominator {den:e} at t = {t} is below the floor {:e}",
                self.floor
            )));
        }
        Ok(horner(&self.numerator, t) / den)
    }
}
