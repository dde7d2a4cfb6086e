//! Brute-force expansion oracle for the telescoped quadratic form.
//!
//! For a fixed order this expands both telescoped summands directly over
//! G-products, substituting the recurrence for every occurrence of
//! G_{m+k-1} (and squaring the substitution sum at the corner), then
//! collects integer coefficients on unordered products G_{m+i} G_{m+j} over
//! -1 <= i <= j <= k-2. It never consults the seven-set ledger, so agreement
//! with the ledger's row-sum evaluation certifies the ledger's cell
//! bookkeeping and branch choices independently.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::ledger::{build_ledger, ContributionLedger};
use super::sets::{classify, triangle_cells, SymbolicError};
use crate::coefficients::{coefficient, denominator};
use crate::identity::Status;

/// Coefficients of G_{m+i} G_{m+j} in the telescoped difference, keyed by
/// unordered cell. Zero entries are kept: the result covers the whole
/// triangle.
pub type ConcreteCoefficients = BTreeMap<(i64, i64), i64>;

/// Expand the telescoped difference for a fixed order.
pub fn expand_concrete(k: u32) -> Result<ConcreteCoefficients, SymbolicError> {
    if k < 2 {
        return Err(SymbolicError::InvalidOrder(k));
    }
    let top = i64::from(k) - 1;
    let mut cells: ConcreteCoefficients = triangle_cells(k).map(|cell| (cell, 0)).collect();
    let mut add = |a: i64, b: i64, value: i64| {
        *cells
            .get_mut(&(a.min(b), a.max(b)))
            .expect("cell inside triangle") += value;
    };

    // First summand: N_{i,j} G_{m+i} G_{m+j} over 0 <= i <= j <= k-1, with
    // every index-(k-1) factor replaced by sum_{t=-1}^{k-2} G_{m+t}.
    for i in 0..i64::from(k) {
        for j in i..i64::from(k) {
            let n = coefficient(i as u32, j as u32, k).expect("cell in range");
            if j < top {
                add(i, j, n);
            } else if i < top {
                // Strip cell (i, k-1): one factor expands.
                for t in -1..top {
                    add(i, t, n);
                }
            } else {
                // Corner (k-1, k-1): the square of the sum contributes once
                // on diagonal products and twice off the diagonal.
                for t1 in -1..top {
                    for t2 in t1..top {
                        add(t1, t2, if t1 == t2 { n } else { 2 * n });
                    }
                }
            }
        }
    }

    // Second summand: minus the index-shifted form N_{i+1,j+1} over the
    // telescoped triangle.
    for (i, j) in triangle_cells(k) {
        let n = coefficient((i + 1) as u32, (j + 1) as u32, k).expect("cell in range");
        add(i, j, -n);
    }

    Ok(cells)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcreteMismatch {
    pub k: u32,
    pub i: i64,
    pub j: i64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcreteCheck {
    pub k: u32,
    pub pass: bool,
    pub mismatches: Vec<ConcreteMismatch>,
}

/// Result of comparing the oracle against the ledger over a range of orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcreteReport {
    pub k_range: (u32, u32),
    pub status: Status,
    pub checks: Vec<ConcreteCheck>,
}

impl ConcreteReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Compare a ledger's row-sum evaluation against the oracle cell by cell for
/// every order in the range, and check the conclusion: the expansion is the
/// common denominator at (0,0) and zero everywhere else.
pub fn verify_concrete_with(ledger: &ContributionLedger, k_range: (u32, u32)) -> ConcreteReport {
    let (k_lo, k_hi) = k_range;
    assert!(k_lo >= 2 && k_lo <= k_hi, "need 2 <= k_lo <= k_hi");
    let mut checks = Vec::new();
    for k in k_lo..=k_hi {
        let oracle = expand_concrete(k).expect("k >= 2 checked");
        let d_k = denominator(k).expect("k >= 2 checked");
        let mut mismatches = Vec::new();
        for (&(i, j), &value) in &oracle {
            let set = classify(i, j, k).expect("cell from triangle");
            let from_ledger = ledger.row_sum(set).evaluate(i, j, i64::from(k));
            if from_ledger != BigInt::from(value) {
                mismatches.push(ConcreteMismatch {
                    k,
                    i,
                    j,
                    detail: format!(
                        "ledger row {set} evaluates to {from_ledger}, oracle expansion gives {value}"
                    ),
                });
            }
            let expected = if (i, j) == (0, 0) { d_k } else { 0 };
            if value != expected {
                mismatches.push(ConcreteMismatch {
                    k,
                    i,
                    j,
                    detail: format!(
                        "oracle expansion gives {value}, conclusion requires {expected}"
                    ),
                });
            }
        }
        checks.push(ConcreteCheck {
            k,
            pass: mismatches.is_empty(),
            mismatches,
        });
    }
    let status = if checks.iter().all(|c| c.pass) {
        Status::Pass
    } else {
        Status::Fail
    };
    ConcreteReport {
        k_range,
        status,
        checks,
    }
}

/// [`verify_concrete_with`] against the freshly built ledger.
pub fn verify_concrete(k_range: (u32, u32)) -> ConcreteReport {
    verify_concrete_with(&build_ledger(), k_range)
}
