//! Order-k linear recurrences with exact arithmetic, plus OEIS b-file
//! ingestion for cross-checks.
//!
//! A sequence of order k satisfies terms[n] = terms[n-1] + ... + terms[n-k]
//! for n >= k. The standard initial conditions are k-1 zeros followed by a 1,
//! matching the OEIS entries for the Fibonacci (k=2), Tribonacci (k=3),
//! Tetranacci (k=4), and Pentanacci (k=5) numbers.
//!
//! Terms are arbitrary-precision: they grow exponentially, and fixed-width
//! overflow would silently falsify downstream verification.
//!
//! b-file ingestion is offline-first: files are read from local paths so that
//! cross-checks stay deterministic.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("order k must be >= 2, got {0}")]
    InvalidOrder(u32),
    #[error("expected {expected} initial terms for order {k}, got {got}")]
    InitialLength { k: u32, expected: usize, got: usize },
    #[error("requested term count must be >= 1")]
    EmptyGeneration,
    #[error("b-file line {line}: {message}")]
    BFileParse { line: usize, message: String },
    #[error("b-file line {line}: index {got} is not contiguous (expected {expected})")]
    NonContiguous {
        line: usize,
        expected: i64,
        got: i64,
    },
    #[error(
        "{source_name} covers {have} terms starting at index {start}, need {needed} from index 0"
    )]
    Coverage {
        source_name: &'static str,
        start: i64,
        have: usize,
        needed: usize,
    },
}

/// Order and initial conditions of a recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    k: u32,
    initial: Vec<BigInt>,
}

impl RecurrenceSpec {
    /// Standard initial conditions: k-1 zeros then 1.
    pub fn standard(k: u32) -> Result<Self, SequenceError> {
        if k < 2 {
            return Err(SequenceError::InvalidOrder(k));
        }
        let mut initial = vec![BigInt::zero(); k as usize - 1];
        initial.push(BigInt::one());
        Ok(Self { k, initial })
    }

    /// Custom initial conditions; must supply exactly k terms.
    pub fn with_initial(k: u32, initial: Vec<BigInt>) -> Result<Self, SequenceError> {
        if k < 2 {
            return Err(SequenceError::InvalidOrder(k));
        }
        if initial.len() != k as usize {
            return Err(SequenceError::InitialLength {
                k,
                expected: k as usize,
                got: initial.len(),
            });
        }
        Ok(Self { k, initial })
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn initial(&self) -> &[BigInt] {
        &self.initial
    }
}

/// A generated window of terms G_0..G_{n-1} for a recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    spec: RecurrenceSpec,
    terms: Vec<BigInt>,
}

impl Sequence {
    pub fn spec(&self) -> &RecurrenceSpec {
        &self.spec
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Generate the first n terms of the recurrence.
///
/// A running window sum keeps generation linear: after emitting terms[m],
/// the sum gains terms[m] and drops terms[m-k].
pub fn generate(spec: &RecurrenceSpec, n: usize) -> Result<Sequence, SequenceError> {
    if n == 0 {
        return Err(SequenceError::EmptyGeneration);
    }
    let k = spec.k as usize;
    let mut terms: Vec<BigInt> = spec.initial.iter().take(n).cloned().collect();
    if n > k {
        terms.reserve(n - k);
        let mut window: BigInt = terms.iter().sum();
        for m in k..n {
            terms.push(window.clone());
            window += &terms[m];
            window -= &terms[m - k];
        }
    }
    Ok(Sequence {
        spec: spec.clone(),
        terms,
    })
}

/// Parsed OEIS b-file: pairs (index, value) with indices contiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    entries: Vec<(i64, BigInt)>,
}

impl BFile {
    pub fn entries(&self) -> &[(i64, BigInt)] {
        &self.entries
    }
}

/// Parse b-file text: one "n a(n)" pair per line, '#' comments and blank
/// lines permitted, leading/trailing whitespace tolerated.
pub fn parse_bfile(text: &str) -> Result<BFile, SequenceError> {
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = line_no + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let index_field = fields.next().expect("non-empty line has a first field");
        let value_field = fields.next().ok_or_else(|| SequenceError::BFileParse {
            line,
            message: "missing value field".into(),
        })?;
        if fields.next().is_some() {
            return Err(SequenceError::BFileParse {
                line,
                message: "more than two fields".into(),
            });
        }
        let index: i64 = index_field.parse().map_err(|_| SequenceError::BFileParse {
            line,
            message: format!("bad index {index_field:?}"),
        })?;
        let value: BigInt = value_field.parse().map_err(|_| SequenceError::BFileParse {
            line,
            message: format!("bad value {value_field:?}"),
        })?;
        if let Some(&(prev, _)) = entries.last() {
            if index != prev + 1 {
                return Err(SequenceError::NonContiguous {
                    line,
                    expected: prev + 1,
                    got: index,
                });
            }
        }
        entries.push((index, value));
    }
    Ok(BFile { entries })
}

/// Outcome of comparing a generated sequence against a b-file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchReport {
    /// All n compared terms agree.
    Agreement { terms_checked: usize },
    /// First index at which the two sources differ.
    Mismatch {
        index: usize,
        sequence_value: BigInt,
        bfile_value: BigInt,
    },
}

/// Compare the first n terms (indices 0..n-1) of a sequence against a b-file.
///
/// Both sources must cover all n indices starting at 0.
pub fn crosscheck(seq: &Sequence, bfile: &BFile, n: usize) -> Result<MatchReport, SequenceError> {
    if seq.len() < n {
        return Err(SequenceError::Coverage {
            source_name: "sequence",
            start: 0,
            have: seq.len(),
            needed: n,
        });
    }
    // Entries are contiguous, so index 0 sits at position -start when start <= 0.
    let start = bfile.entries.first().map(|&(i, _)| i).unwrap_or(0);
    let skip = usize::try_from(-start).unwrap_or(usize::MAX);
    if start > 0 || bfile.entries.len() < skip.saturating_add(n) {
        return Err(SequenceError::Coverage {
            source_name: "b-file",
            start,
            have: bfile.entries.len(),
            needed: n,
        });
    }
    for (idx, (seq_value, (_, bfile_value))) in seq
        .terms
        .iter()
        .zip(bfile.entries.iter().skip(skip))
        .take(n)
        .enumerate()
    {
        if seq_value != bfile_value {
            return Ok(MatchReport::Mismatch {
                index: idx,
                sequence_value: seq_value.clone(),
                bfile_value: bfile_value.clone(),
            });
        }
    }
    Ok(MatchReport::Agreement { terms_checked: n })
}
