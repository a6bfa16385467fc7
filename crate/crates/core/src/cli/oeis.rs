//! Cross-check of Bernoulli numerator/denominator b-files.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::bfile::BFileEntry;
use crate::arith::{rational, Rational};
use crate::bernoulli::{bernoulli_recurrence, bernoulli_split};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisRow {
    pub n: u32,
    pub file_value: Rational,
    pub recurrence: Rational,
    pub split: Rational,
}

impl OeisRow {
    pub fn passed(&self) -> bool {
        self.file_value == self.recurrence && self.file_value == self.split
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisReport {
    pub rows: Vec<OeisRow>,
}

impl OeisReport {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.passed()).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

fn index_map(entries: &[BFileEntry]) -> BTreeMap<i64, &BigInt> {
    entries.iter().map(|e| (e.index, &e.value)).collect()
}

/// Compares `numerator[n] / denominator[n]` with the recurrence and with the
/// balanced split `(floor(n/2), ceil(n/2))` for every `n <= max_n`.
pub fn oeis_check(
    numerators: &[BFileEntry],
    denominators: &[BFileEntry],
    max_n: u32,
) -> Result<OeisReport> {
    let nums = index_map(numerators);
    let dens = index_map(denominators);
    let mut rows = Vec::with_capacity(max_n as usize + 1);
    for n in 0..=max_n {
        let key = i64::from(n);
        let num = nums
            .get(&key)
            .ok_or_else(|| Error::Data(format!("numerator file has no index {n}")))?;
        let den = dens
            .get(&key)
            .ok_or_else(|| Error::Data(format!("denominator file has no index {n}")))?;
        if den.is_zero() {
            return Err(Error::Data(format!("denominator at index {n} is zero")));
        }
        rows.push(OeisRow {
            n,
            file_value: rational((*num).clone(), (*den).clone())?,
            recurrence: bernoulli_recurrence(n),
            split: bernoulli_split(n / 2, n - n / 2),
        });
    }
    Ok(OeisReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::bfile::parse_bfile;

    fn files(max: u32) -> (Vec<BFileEntry>, Vec<BFileEntry>) {
        (0..=max)
            .map(|n| {
                let b = bernoulli_recurrence(n);
                (
                    BFileEntry::new(n as i64, b.numer().clone()),
                    BFileEntry::new(n as i64, b.denom().clone()),
                )
            })
            .unzip()
    }

    #[test]
    fn consistent_files_pass() {
        let (nums, dens) = files(20);
        let report = oeis_check(&nums, &dens, 20).unwrap();
        assert_eq!(report.rows.len(), 21);
        assert!(report.passed());
    }

    #[test]
    fn corrupted_denominator_fails_at_two() {
        let (nums, mut dens) = files(20);
        dens[2] = BFileEntry::new(2, 5);
        let report = oeis_check(&nums, &dens, 20).unwrap();
        assert_eq!(report.failures(), 1);
        assert!(!report.rows[2].passed());
    }

    #[test]
    fn coverage_errors() {
        let (nums, dens) = files(10);
        assert!(matches!(oeis_check(&nums, &dens, 11), Err(Error::Data(_))));
        let dens = parse_bfile("0 1\n1 0\n").unwrap();
        assert!(matches!(oeis_check(&nums, &dens, 1), Err(Error::Data(_))));
    }
}
