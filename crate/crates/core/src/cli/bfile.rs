//! OEIS b-file reading and writing.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// One `index value` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFileEntry {
    pub index: i64,
    pub value: BigInt,
}

impl BFileEntry {
    pub fn new(index: i64, value: impl Into<BigInt>) -> Self {
        BFileEntry {
            index,
            value: value.into(),
        }
    }
}

/// Parses b-file text. Blank lines and lines starting with `#` are skipped;
/// every other line must hold exactly two integers, with strictly
/// increasing indices.
pub fn parse_bfile(text: &str) -> Result<Vec<BFileEntry>> {
    let mut entries: Vec<BFileEntry> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let [index, value] = tokens[..] else {
            return Err(err(format!("expected 2 tokens, found {}", tokens.len())));
        };
        let index: i64 = index
            .parse()
            .map_err(|_| err(format!("index {index:?} is not an integer")))?;
        let value: BigInt = value
            .parse()
            .map_err(|_| err(format!("value {value:?} is not an integer")))?;
        if let Some(prev) = entries.last() {
            if index <= prev.index {
                return Err(err(format!(
                    "index {index} does not increase on {}",
                    prev.index
                )));
            }
        }
        entries.push(BFileEntry { index, value });
    }
    Ok(entries)
}

/// Writes entries as b-file lines, LF-terminated.
pub fn render_bfile(entries: &[BFileEntry]) -> String {
    entries
        .iter()
        .map(|e| format!("{} {}\n", e.index, e.value))
        .collect()
}
