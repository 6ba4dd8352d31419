//! Count tables, coincidence counts and their conversion to probabilities.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Ordered `(label, count)` entries with unique labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountTable {
    entries: Vec<(String, u64)>,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table, rejecting duplicate labels.
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut table = Self::new();
        for (label, count) in entries {
            table.push(label, count)?;
        }
        Ok(table)
    }

    /// Appends an entry. Duplicate labels are an error, never merged.
    pub fn push(&mut self, label: impl Into<String>, count: u64) -> Result<()> {
        let label = label.into();
        if self.entries.iter().any(|(l, _)| *l == label) {
            return Err(Error::data(format!("duplicate label {label:?}")));
        }
        self.entries.push((label, count));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(String, u64)] {
        &self.entries
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(l, _)| l.as_str())
    }

    pub fn counts(&self) -> Vec<u64> {
        self.entries.iter().map(|&(_, c)| c).collect()
    }

    pub fn total(&self) -> u128 {
        self.entries.iter().map(|&(_, c)| u128::from(c)).sum()
    }
}

/// Probabilities in the order of the table they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl core::ops::Index<usize> for ProbabilityVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// `count / total` for every entry of the table.
pub fn normalize(table: &CountTable) -> Result<ProbabilityVector> {
    normalize_counts(&table.counts())
}

pub fn normalize_counts(counts: &[u64]) -> Result<ProbabilityVector> {
    let total: u128 = counts.iter().map(|&c| u128::from(c)).sum();
    if total == 0 {
        return Err(Error::degenerate("counts sum to zero"));
    }
    let total = total as f64;
    Ok(ProbabilityVector(
        counts.iter().map(|&c| c as f64 / total).collect(),
    ))
}

/// The four cells of one coincidence experiment. Cell `ij` holds outcome `i`
/// of the left experiment together with outcome `j` of the right one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoincidenceCounts {
    pub n11: u64,
    pub n12: u64,
    pub n21: u64,
    pub n22: u64,
}

impl CoincidenceCounts {
    pub fn new(n11: u64, n12: u64, n21: u64, n22: u64) -> Result<Self> {
        let c = Self { n11, n12, n21, n22 };
        if c.total() == 0 {
            return Err(Error::degenerate("coincidence counts sum to zero"));
        }
        Ok(c)
    }

    pub fn total(&self) -> u128 {
        [self.n11, self.n12, self.n21, self.n22]
            .iter()
            .map(|&c| u128::from(c))
            .sum()
    }
}

/// The four experiments `AB`, `A'B`, `AB'` and `A'B'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoincidenceSet {
    pub ab: CoincidenceCounts,
    pub apb: CoincidenceCounts,
    pub abp: CoincidenceCounts,
    pub apbp: CoincidenceCounts,
}

/// Case-folds `text` and collapses every run of whitespace into one space.
/// Leading and trailing whitespace is dropped.
pub fn normalize_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for word in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(word.chars().flat_map(char::to_lowercase));
    }
    out
}

/// Whether `document` contains `phrase` once both are normalised with
/// [`normalize_text`]. `phrase` is expected to be normalised already.
pub fn contains_normalized_phrase(document: &str, normalized_phrase: &str) -> bool {
    !normalized_phrase.is_empty() && normalize_text(document).contains(normalized_phrase)
}
