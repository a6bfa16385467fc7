//! Stirling numbers of the second kind and Bell numbers.
//!
//! [`StirlingTriangle`] is internally synchronized: rows are appended under a
//! write lock and never modified afterwards, so a shared triangle can be read
//! and extended from any thread. The free functions use one process-wide
//! triangle.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest `n` accepted by the enumeration oracle.
pub const BRUTEFORCE_MAX_N: u32 = 12;

/// Memoized rows `S(n, 0..=n)`.
#[derive(Debug, Default)]
pub struct StirlingTriangle {
    rows: RwLock<Vec<Arc<Vec<BigInt>>>>,
}

impl StirlingTriangle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Triangle with rows `0..=max_n` already computed.
    pub fn with_rows(max_n: usize) -> Self {
        let triangle = Self::new();
        triangle.ensure(max_n);
        triangle
    }

    /// Highest computed row, if any.
    pub fn max_n(&self) -> Option<usize> {
        self.rows.read().unwrap().len().checked_sub(1)
    }

    fn ensure(&self, n: usize) {
        if self.rows.read().unwrap().len() > n {
            return;
        }
        let mut rows = self.rows.write().unwrap();
        if rows.is_empty() {
            rows.push(Arc::new(vec![BigInt::one()]));
        }
        while rows.len() <= n {
            let prev = rows.last().unwrap();
            let len = prev.len();
            let mut next = vec![BigInt::zero(); len + 1];
            for k in 1..=len {
                // S(n, k) = k S(n-1, k) + S(n-1, k-1)
                let carry = prev.get(k).map(|s| s * k).unwrap_or_default();
                next[k] = carry + &prev[k - 1];
            }
            rows.push(Arc::new(next));
        }
    }

    /// Row `[S(n,0), ..., S(n,n)]`, shared.
    pub fn row(&self, n: usize) -> Arc<Vec<BigInt>> {
        self.ensure(n);
        Arc::clone(&self.rows.read().unwrap()[n])
    }

    /// `S(n, k)`; zero for `k < 0` or `k > n`.
    pub fn get(&self, n: usize, k: i64) -> BigInt {
        if k < 0 || k as usize > n {
            return BigInt::zero();
        }
        self.row(n)[k as usize].clone()
    }
}

fn shared() -> &'static StirlingTriangle {
    static TRIANGLE: OnceLock<StirlingTriangle> = OnceLock::new();
    TRIANGLE.get_or_init(StirlingTriangle::new)
}

/// `S(n, k)` from the shared memo table.
pub fn stirling2(n: usize, k: i64) -> BigInt {
    shared().get(n, k)
}

/// `[S(n,0), ..., S(n,n)]` from the shared memo table.
pub fn stirling2_row(n: usize) -> Vec<BigInt> {
    shared().row(n).as_ref().clone()
}

pub(crate) fn stirling2_row_shared(n: usize) -> Arc<Vec<BigInt>> {
    shared().row(n)
}

/// Counts partitions of `{1..n}` into exactly `k` blocks by walking every
/// restricted growth string of length `n`.
pub fn stirling2_bruteforce(n: u32, k: i64) -> Result<u64> {
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::Scope(format!(
            "enumeration oracle is capped at n = {BRUTEFORCE_MAX_N}, got {n}"
        )));
    }
    let mut counts = vec![0u64; n as usize + 1];
    for_each_partition(n as usize, |blocks| counts[blocks] += 1);
    Ok(match usize::try_from(k) {
        Ok(k) if k <= n as usize => counts[k],
        _ => 0,
    })
}

/// Calls `visit(block_count)` once per set partition of an `n`-set.
fn for_each_partition(n: usize, mut visit: impl FnMut(usize)) {
    if n == 0 {
        visit(0);
        return;
    }
    // a[i] <= 1 + max(a[0..i]), a[0] = 0
    let mut growth = vec![0usize; n];
    let mut prefix_max = vec![0usize; n];
    loop {
        visit(prefix_max[n - 1] + 1);
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if growth[i] <= prefix_max[i - 1] {
                growth[i] += 1;
                prefix_max[i] = prefix_max[i - 1].max(growth[i]);
                for j in i + 1..n {
                    growth[j] = 0;
                    prefix_max[j] = prefix_max[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Bell number `B(n) = sum_k S(n, k)`.
pub fn bell(n: usize) -> BigInt {
    shared().row(n).iter().sum()
}

/// Bell numbers `0..=n` via the Bell triangle, independent of the Stirling table.
pub fn bell_triangle(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for value in &row {
            let sum = next.last().unwrap() + value;
            next.push(sum);
        }
        out.push(next[0].clone());
        row = next;
    }
    out.truncate(n + 1);
    out
}
