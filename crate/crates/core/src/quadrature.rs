//! Floating-point checks of the half-line integral
//! `int_0^inf Li_{-m}(-1/t) Li_{-n}(-t) / t dt` and of the termwise Beta
//! integrals `int_0^inf t^k / (1+t)^{k+l+2} dt = B(k+1, l+1)`.
//!
//! Integration maps `(0, inf)` to `(0, 1)` with `u = t/(1+t)`, so
//! `dt = du/(1-u)^2`, then applies composite Gauss-Legendre over equal
//! panels. For the integrands used here the transformed integrand is a
//! rational function of `u` with finite limits at both ends.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::ToPrimitive;

use crate::arith::{beta_integer, int, rational, Rational};
use crate::bernoulli::bernoulli_recurrence;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::poly::FloatRationalFunction;
use crate::polylog::polylog_neg_rf;

pub const DEFAULT_PANELS: usize = 16;
pub const DEFAULT_NODES: usize = 32;

/// Largest `m + n` accepted by [`verify_integral`]. Beyond this the
/// integrand's cancellation swamps double precision.
pub const MAX_ORDER_SUM: u32 = 12;

/// Pass threshold on `rel_error` for `2 <= m + n`.
pub const INTEGRAL_TOLERANCE: f64 = 1e-6;

/// Pass threshold on `rel_error` for the rows `m + n <= 1`, whose integrands
/// are `1/(1+t)^2` and `1/(1+t)^3`.
pub const EDGE_TOLERANCE: f64 = 1e-10;

/// Pass threshold on `rel_error` for Beta integrals.
pub const BETA_TOLERANCE: f64 = 1e-8;

pub fn integral_tolerance(m: u32, n: u32) -> f64 {
    if m + n <= 1 {
        EDGE_TOLERANCE
    } else {
        INTEGRAL_TOLERANCE
    }
}

/// Largest `k + l` accepted by [`beta_quadrature_check`].
pub const MAX_BETA_SUM: u32 = 20;

/// Gauss-Legendre abscissae and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Roots of `P_n` by Newton iteration from Chebyshev-like guesses.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument(
                "Gauss-Legendre rule needs at least one node".into(),
            ));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut derivative = 0.0;
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                derivative = dp;
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    derivative = legendre(n, x).1;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * derivative * derivative);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(GaussLegendre { nodes, weights })
    }

    /// Shared rule for `n` nodes, built once per process.
    pub fn cached(n: usize) -> Result<Arc<Self>> {
        static RULES: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let mut rules = RULES.get_or_init(Default::default).lock().unwrap();
        if let Some(rule) = rules.get(&n) {
            return Ok(Arc::clone(rule));
        }
        let rule = Arc::new(Self::new(n)?);
        rules.insert(n, Arc::clone(&rule));
        Ok(rule)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integral of `f` over `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }

    /// `int_0^inf f(t) dt` over `panels` equal subintervals of `u in (0, 1)`.
    /// Panel sums are added in panel order whatever the execution mode.
    pub fn integrate_halfline<F>(&self, f: F, panels: usize, execution: Execution) -> f64
    where
        F: Fn(f64) -> f64 + Sync + Send,
    {
        let width = 1.0 / panels as f64;
        let mapped = |u: f64| {
            let v = 1.0 - u;
            f(u / v) / (v * v)
        };
        let sums = execution.map((0..panels).collect(), |i| {
            self.integrate(mapped, i as f64 * width, (i + 1) as f64 * width)
        });
        sums.into_iter().sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// `int_0^inf f(t) dt` with a fresh composite rule; runs sequentially.
pub fn integrate_halfline<F>(f: F, panels: usize, nodes: usize) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    check_config(panels, nodes)?;
    let rule = GaussLegendre::cached(nodes)?;
    Ok(rule.integrate_halfline(f, panels, Execution::Sequential))
}

fn check_config(panels: usize, nodes: usize) -> Result<()> {
    if panels == 0 || nodes == 0 {
        return Err(Error::Argument(format!(
            "panels and nodes must be positive, got panels = {panels}, nodes = {nodes}"
        )));
    }
    Ok(())
}

/// `t -> Li_{-m}(-1/t) Li_{-n}(-t) / t`, with both factors prepared once.
#[derive(Debug, Clone)]
pub struct Integrand {
    reciprocal_factor: FloatRationalFunction,
    direct_factor: FloatRationalFunction,
}

impl Integrand {
    pub fn new(m: u32, n: u32) -> Self {
        Integrand {
            reciprocal_factor: FloatRationalFunction::from(&polylog_neg_rf(m).compose_reciprocal()),
            direct_factor: FloatRationalFunction::from(&polylog_neg_rf(n)),
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::Domain(format!("integrand needs t > 0, got {t}")));
        }
        Ok(self.reciprocal_factor.eval(t)? * self.direct_factor.eval(t)? / t)
    }
}

/// Integrand value at a single point.
pub fn integrand(m: u32, n: u32, t: f64) -> Result<f64> {
    Integrand::new(m, n).eval(t)
}

/// Estimate against an exact target.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureReport {
    pub m: u32,
    pub n: u32,
    pub estimate: f64,
    pub expected: Rational,
    pub abs_error: f64,
    /// `abs_error / max(1, |expected|)`.
    pub rel_error: f64,
    pub nodes: usize,
    pub panels: usize,
}

impl QuadratureReport {
    fn new(m: u32, n: u32, estimate: f64, expected: Rational, panels: usize, nodes: usize) -> Self {
        let target = expected.to_f64().unwrap_or(f64::NAN);
        let abs_error = (estimate - target).abs();
        QuadratureReport {
            m,
            n,
            estimate,
            expected,
            abs_error,
            rel_error: abs_error / target.abs().max(1.0),
            nodes,
            panels,
        }
    }

    /// `rel_error <= tolerance`; false for non-finite estimates.
    pub fn passes(&self, tolerance: f64) -> bool {
        self.rel_error <= tolerance
    }
}

/// Exact value of the half-line integral for orders `m`, `n`.
///
/// `B_{m+n}` when `m + n >= 2`. The two low rows are fixed separately:
/// `(0, 0)` gives 1 (the limit of `-(m+n) zeta(1-m-n)`), and `m + n = 1`
/// gives `+1/2 = -zeta(0)`, the opposite sign of `B_1`.
pub fn integral_expected(m: u32, n: u32) -> Rational {
    match m + n {
        0 => int(1),
        1 => rational(1, 2).expect("nonzero denominator"),
        total => bernoulli_recurrence(total),
    }
}

/// Integrates the polylogarithm product for `(m, n)` and compares with
/// [`integral_expected`].
pub fn verify_integral(m: u32, n: u32, panels: usize, nodes: usize) -> Result<QuadratureReport> {
    verify_integral_with(m, n, panels, nodes, Execution::Sequential)
}

pub fn verify_integral_with(
    m: u32,
    n: u32,
    panels: usize,
    nodes: usize,
    execution: Execution,
) -> Result<QuadratureReport> {
    if m + n > MAX_ORDER_SUM {
        return Err(Error::Scope(format!(
            "m + n = {} exceeds the double-precision cap {MAX_ORDER_SUM}",
            m + n
        )));
    }
    check_config(panels, nodes)?;
    let rule = GaussLegendre::cached(nodes)?;
    let f = Integrand::new(m, n);
    let estimate = rule.integrate_halfline(|t| f.eval(t).unwrap_or(f64::NAN), panels, execution);
    if !estimate.is_finite() {
        return Err(Error::Evaluation(format!(
            "non-finite estimate for ({m}, {n})"
        )));
    }
    Ok(QuadratureReport::new(
        m,
        n,
        estimate,
        integral_expected(m, n),
        panels,
        nodes,
    ))
}

/// Integrates `t^k / (1+t)^{k+l+2}` and compares with `B(k+1, l+1)`.
pub fn beta_quadrature_check(
    k: u32,
    l: u32,
    panels: usize,
    nodes: usize,
) -> Result<QuadratureReport> {
    if k + l > MAX_BETA_SUM {
        return Err(Error::Scope(format!(
            "k + l = {} exceeds the cap {MAX_BETA_SUM}",
            k + l
        )));
    }
    check_config(panels, nodes)?;
    let rule = GaussLegendre::cached(nodes)?;
    let power = (k + l + 2) as i32;
    let estimate = rule.integrate_halfline(
        |t| t.powi(k as i32) / (1.0 + t).powi(power),
        panels,
        Execution::Sequential,
    );
    let expected = beta_integer(i64::from(k) + 1, i64::from(l) + 1)?;
    Ok(QuadratureReport::new(
        k, l, estimate, expected, panels, nodes,
    ))
}

/// [`verify_integral`] for every `(m, n)` with `min_sum <= m + n <= max_sum`,
/// ordered by `m` then `n`.
pub fn verify_integral_grid(
    min_sum: u32,
    max_sum: u32,
    panels: usize,
    nodes: usize,
    execution: Execution,
) -> Vec<Result<QuadratureReport>> {
    let _ = bernoulli_recurrence(max_sum);
    let cells: Vec<(u32, u32)> = (0..=max_sum)
        .flat_map(|m| (0..=max_sum - m).map(move |n| (m, n)))
        .filter(|(m, n)| m + n >= min_sum)
        .collect();
    execution.map(cells, |(m, n)| verify_integral(m, n, panels, nodes))
}

/// [`beta_quadrature_check`] for every `(k, l)` with `k + l <= max_sum`.
pub fn beta_grid(
    max_sum: u32,
    panels: usize,
    nodes: usize,
    execution: Execution,
) -> Vec<Result<QuadratureReport>> {
    let cells: Vec<(u32, u32)> = (0..=max_sum)
        .flat_map(|k| (0..=max_sum - k).map(move |l| (k, l)))
        .collect();
    execution.map(cells, |(k, l)| beta_quadrature_check(k, l, panels, nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorials;
    use crate::bernoulli::bernoulli_split;
    use crate::combinatorics::stirling2_row;
    use crate::poly::{Polynomial, RationalFunction};
    use crate::polylog::polylog_neg_rf;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rule_properties() {
        for n in [1, 2, 5, 16, 32, 64] {
            let rule = GaussLegendre::new(n).unwrap();
            let total: f64 = rule.weights().iter().sum();
            assert!(close(total, 2.0, 1e-14), "n = {n}: {total}");
            // exact for x^{2n-1} and x^{2n-2}
            let even = rule.integrate(|x| x.powi(2 * n as i32 - 2), -1.0, 1.0);
            assert!(close(even, 2.0 / (2 * n - 1) as f64, 1e-13), "n = {n}");
        }
        let two = GaussLegendre::new(2).unwrap();
        assert!(close(two.nodes()[1], 1.0 / 3f64.sqrt(), 1e-15));
        assert!(GaussLegendre::new(0).is_err());
        assert!(Arc::ptr_eq(
            &GaussLegendre::cached(32).unwrap(),
            &GaussLegendre::cached(32).unwrap()
        ));
    }

    #[test]
    fn halfline_examples() {
        let a = integrate_halfline(|t| 1.0 / (1.0 + t).powi(2), 8, 32).unwrap();
        assert!(close(a, 1.0, 1e-12), "{a}");
        let b = integrate_halfline(|t| 1.0 / (1.0 + t).powi(3), 8, 32).unwrap();
        assert!(close(b, 0.5, 1e-12), "{b}");
        let c = integrate_halfline(|t| t / (1.0 + t).powi(4), 8, 32).unwrap();
        assert!(close(c, 1.0 / 6.0, 1e-10), "{c}");
        assert!(integrate_halfline(|t| t, 0, 32).is_err());
    }

    #[test]
    fn integrand_examples() {
        assert!(close(integrand(0, 0, 1.0).unwrap(), 0.25, 1e-15));
        assert!(close(integrand(0, 1, 1.0).unwrap(), 0.125, 1e-15));
        // (1, 1) at t = 2: exact product of the two rational factors over t
        let t = int(2);
        let left = polylog_neg_rf(1)
            .compose_reciprocal()
            .eval_exact(&t)
            .unwrap();
        let right = polylog_neg_rf(1).eval_exact(&t).unwrap();
        let exact = (left * right / &t).to_f64().unwrap();
        assert!(close(exact, 2.0 / 81.0, 1e-17));
        assert!(close(integrand(1, 1, 2.0).unwrap(), exact, 1e-16));
        assert!(matches!(integrand(1, 1, 0.0), Err(Error::Domain(_))));
        assert!(matches!(integrand(1, 1, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn integrand_finite_near_ends() {
        for m in 0..=6 {
            for n in 0..=6 {
                let f = Integrand::new(m, n);
                for t in [1e-12, 1e-6, 1e6, 1e12] {
                    let v = f.eval(t).unwrap() * (1.0 + t) * (1.0 + t);
                    assert!(v.is_finite(), "({m}, {n}) at {t}");
                }
            }
        }
    }

    #[test]
    fn verify_examples() {
        let r = verify_integral(0, 0, 16, 32).unwrap();
        assert_eq!(r.expected, int(1));
        assert!(r.rel_error <= 1e-10, "{r:?}");

        let r = verify_integral(1, 1, 16, 32).unwrap();
        assert_eq!(r.expected, rational(1, 6).unwrap());
        assert!(r.rel_error <= 1e-8, "{r:?}");

        let r = verify_integral(0, 1, 16, 32).unwrap();
        assert_eq!(r.expected, rational(1, 2).unwrap());
        assert!(r.rel_error <= 1e-10, "{r:?}");

        let r = verify_integral(1, 2, 16, 32).unwrap();
        assert!(r.expected.is_zero());
        assert!(r.abs_error <= 1e-8, "{r:?}");
        assert_eq!((r.panels, r.nodes), (16, 32));

        assert!(matches!(
            verify_integral(6, 7, 16, 32),
            Err(Error::Scope(_))
        ));
        assert!(matches!(
            verify_integral(1, 1, 0, 32),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn report_invariants() {
        let r = verify_integral(3, 3, 16, 32).unwrap();
        let target = r.expected.to_f64().unwrap();
        assert_eq!(r.abs_error, (r.estimate - target).abs());
        assert_eq!(r.rel_error, r.abs_error / target.abs().max(1.0));
    }

    #[test]
    fn beta_examples() {
        let r = beta_quadrature_check(0, 0, 16, 32).unwrap();
        assert_eq!(r.expected, int(1));
        let r = beta_quadrature_check(1, 1, 16, 32).unwrap();
        assert_eq!(r.expected, rational(1, 6).unwrap());
        assert!(r.rel_error <= 1e-12);
        let r = beta_quadrature_check(2, 3, 16, 32).unwrap();
        assert_eq!(r.expected, rational(1, 60).unwrap());
        assert!(r.rel_error <= 1e-12);
        assert!(matches!(
            beta_quadrature_check(10, 11, 16, 32),
            Err(Error::Scope(_))
        ));
    }

    #[test]
    fn grid_matches_bernoulli() {
        let reports =
            verify_integral_grid(2, 10, DEFAULT_PANELS, DEFAULT_NODES, Execution::Parallel);
        assert_eq!(reports.len(), 66 - 3);
        for r in reports {
            let r = r.unwrap();
            assert!(r.passes(1e-6), "{r:?}");
        }
    }

    #[test]
    fn matches_termwise_sum() {
        for m in 1..=9u32 {
            for n in 1..=10 - m {
                let r = verify_integral(m, n, DEFAULT_PANELS, DEFAULT_NODES).unwrap();
                let termwise = bernoulli_split(m, n).to_f64().unwrap();
                assert!(
                    (r.estimate - termwise).abs() / termwise.abs().max(1.0) <= 1e-6,
                    "({m}, {n})"
                );
            }
        }
    }

    #[test]
    fn swap_symmetry() {
        for m in 0..=10u32 {
            for n in 0..=10 - m {
                let a = verify_integral(m, n, DEFAULT_PANELS, DEFAULT_NODES).unwrap();
                let b = verify_integral(n, m, DEFAULT_PANELS, DEFAULT_NODES).unwrap();
                assert!(close(a.estimate, b.estimate, 1e-10), "({m}, {n})");
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = verify_integral_with(4, 5, 16, 32, Execution::Sequential).unwrap();
        let b = verify_integral_with(4, 5, 16, 32, Execution::Parallel).unwrap();
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
    }

    #[test]
    fn panel_doubling_stable() {
        for m in 0..=10u32 {
            for n in 0..=10 - m {
                if m + n < 2 {
                    continue;
                }
                let mut previous = verify_integral(m, n, 4, 32).unwrap().abs_error;
                for panels in [8, 16, 32, 64] {
                    let current = verify_integral(m, n, panels, 32).unwrap().abs_error;
                    assert!(
                        current <= 2.0 * previous + ROUNDING_FLOOR,
                        "({m}, {n}) panels {panels}: {previous:e} -> {current:e}"
                    );
                    previous = current;
                }
            }
        }
    }

    /// Errors at this level are f64 rounding, not discretization.
    const ROUNDING_FLOOR: f64 = 1e-13;

    /// With one factor at order zero the integrand is, symbolically,
    /// `-sum_{k>=1} (-1)^k k! S(n,k) t^{k-1} / (1+t)^{k+2}`; each term
    /// integrates to `B(k, 2) = 1/(k(k+1))`.
    #[test]
    fn zero_order_boundary_exact() {
        for n in 1..=30u32 {
            let product = &(&polylog_neg_rf(0).compose_reciprocal() * &polylog_neg_rf(n))
                * &RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[0, 1]))
                    .unwrap();
            let row = stirling2_row(n as usize);
            let fact = factorials(n as usize);
            let top = n as usize + 2;
            // common denominator (1+t)^{n+2}
            let mut numerator = Polynomial::zero();
            let mut value = Rational::zero();
            for k in 1..=n as usize {
                let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
                let c = BigInt::from(sign) * &fact[k] * &row[k];
                let term = &Polynomial::monomial(int(c.clone()), k - 1)
                    * &Polynomial::linear_power(1, 1, top - k - 2);
                numerator = &numerator + &term;
                value += int(c) * beta_integer(k as i64, 2).unwrap();
            }
            let expansion =
                RationalFunction::new(numerator, Polynomial::linear_power(1, 1, top)).unwrap();
            assert_eq!(product, expansion, "n = {n}");
            assert_eq!(value, integral_expected(0, n), "n = {n}");
            assert_eq!(value, integral_expected(n, 0), "n = {n}");
        }
    }
}
