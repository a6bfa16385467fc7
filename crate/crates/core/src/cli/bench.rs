//! Wall-time comparison of the three Bernoulli strategies.
//!
//! For each `N <= max_sum` the harness times the recurrence (with a fresh
//! memo, so the whole table is rebuilt), the single Stirling sum, and the
//! double sum at every split `m = 0..=N`. Each cell reports the median of
//! [`RUNS_PER_CELL`] runs on a monotonic clock. All results for one `N` must
//! be the same rational; any disagreement aborts the run.

use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};

use crate::arith::{render, Rational};
use crate::bernoulli::{bernoulli_split, bernoulli_stirling_sum, BernoulliMethod, BernoulliTable};
use crate::error::{Error, Result};
use crate::par::Execution;

pub const MAX_BENCH_SUM: u32 = 200;
pub const RUNS_PER_CELL: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub method: String,
    pub n: u32,
    /// Set for split rows only.
    pub split_m: Option<u32>,
    pub wall_time: Duration,
    pub result_hash: String,
}

/// First 16 hex digits of SHA-256 over the rendered rational.
pub fn result_hash(value: &Rational) -> String {
    let digest = Sha256::digest(render(value).as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn median_time(mut run: impl FnMut() -> Rational) -> (Duration, Rational) {
    let mut times = Vec::with_capacity(RUNS_PER_CELL);
    let mut value = None;
    for _ in 0..RUNS_PER_CELL {
        let start = Instant::now();
        let result = run();
        times.push(start.elapsed());
        value = Some(result);
    }
    times.sort();
    (times[RUNS_PER_CELL / 2], value.expect("at least one run"))
}

/// Rejects a cell whose results disagree.
pub fn check_consistency(n: u32, results: &[(BernoulliMethod, Rational)]) -> Result<()> {
    let Some((first_method, first)) = results.first() else {
        return Ok(());
    };
    for (method, value) in &results[1..] {
        if value != first {
            return Err(Error::Correctness(format!(
                "B_{n}: {first_method} gave {} but {method:?} gave {}",
                render(first),
                render(value)
            )));
        }
    }
    Ok(())
}

fn bench_index(n: u32) -> Result<Vec<BenchRow>> {
    let mut cells: Vec<(BernoulliMethod, Duration, Rational)> = Vec::with_capacity(n as usize + 3);
    let (t, v) = median_time(|| BernoulliTable::new().get(n as usize));
    cells.push((BernoulliMethod::Recurrence, t, v));
    let (t, v) = median_time(|| bernoulli_stirling_sum(n));
    cells.push((BernoulliMethod::StirlingSum, t, v));
    for m in 0..=n {
        let (t, v) = median_time(|| bernoulli_split(m, n - m));
        cells.push((BernoulliMethod::Split { m, n: n - m }, t, v));
    }
    let results: Vec<(BernoulliMethod, Rational)> =
        cells.iter().map(|(m, _, v)| (*m, v.clone())).collect();
    check_consistency(n, &results)?;
    Ok(cells
        .into_iter()
        .map(|(method, wall_time, value)| BenchRow {
            method: method.to_string(),
            n,
            split_m: match method {
                BernoulliMethod::Split { m, .. } => Some(m),
                _ => None,
            },
            wall_time,
            result_hash: result_hash(&value),
        })
        .collect())
}

/// Runs every cell for `N = 0..=max_sum`. Rows come back ordered by `N`,
/// then recurrence, Stirling sum, and splits by ascending `m`.
pub fn bench_run(max_sum: u32, execution: Execution) -> Result<Vec<BenchRow>> {
    if max_sum > MAX_BENCH_SUM {
        return Err(Error::Argument(format!(
            "--max-sum {max_sum} exceeds the limit {MAX_BENCH_SUM}"
        )));
    }
    let per_index = execution.map((0..=max_sum).collect(), bench_index);
    let mut rows = Vec::new();
    for cell in per_index {
        rows.extend(cell?);
    }
    Ok(rows)
}
