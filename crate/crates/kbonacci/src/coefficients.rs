//! Closed-form coefficients of the sums-of-squares identity.
//!
//! For order k >= 2 the identity reads, in cleared (integer) form,
//!
//!   D_k * sum_{i=0..m} G_i^2  =  sum_{0<=i<=j<=k-1} N_{i,j} G_{m+i} G_{m+j}  -  N_{k-1,k-1}
//!
//! with
//!
//!   D_k     = 2(k-1)
//!   N_{0,0} = -(k-2)
//!   N_{i,i} = 4 - (i+3)(k-i)        for 1 <= i <= k-1
//!   N_{i,j} = 2(i+1)(j-(k-2))       for 0 <= i < j <= k-1
//!
//! Cells are stored only for i <= j; lookups with i > j are rejected rather
//! than symmetrized, mirroring the summation convention i <= j <= k-1.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoefficientError {
    #[error("order k must be >= 2, got {0}")]
    InvalidOrder(u32),
    #[error("cell ({i}, {j}) violates the ordering i <= j")]
    CellOrder { i: u32, j: u32 },
    #[error("cell ({i}, {j}) out of range for order {k}")]
    CellRange { i: u32, j: u32, k: u32 },
}

/// The full coefficient table of the identity for a fixed order.
///
/// `entries` holds N_{i,j} for every cell 0 <= i <= j <= k-1, so it has
/// exactly k(k+1)/2 cells. `cleared_constant` is the additive constant of the
/// cleared form, -N_{k-1,k-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    pub k: u32,
    pub entries: BTreeMap<(u32, u32), i64>,
    pub denominator: i64,
    pub cleared_constant: i64,
}

impl CoefficientTable {
    /// N_{i,j} for an ordered cell. Rejects i > j and out-of-range cells.
    pub fn get(&self, i: u32, j: u32) -> Result<i64, CoefficientError> {
        if i > j {
            return Err(CoefficientError::CellOrder { i, j });
        }
        self.entries
            .get(&(i, j))
            .copied()
            .ok_or(CoefficientError::CellRange { i, j, k: self.k })
    }

    /// The diagonal N_{0,0}..N_{k-1,k-1} in index order.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.k).map(|i| self.entries[&(i, i)]).collect()
    }
}

/// Common denominator D_k = 2(k-1).
pub fn denominator(k: u32) -> Result<i64, CoefficientError> {
    if k < 2 {
        return Err(CoefficientError::InvalidOrder(k));
    }
    Ok(2 * (i64::from(k) - 1))
}

/// Coefficient N_{i,j} of G_{m+i} G_{m+j}, dispatching on the cell's position:
/// the corner (0,0), the rest of the diagonal, or the off-diagonal triangle.
pub fn coefficient(i: u32, j: u32, k: u32) -> Result<i64, CoefficientError> {
    if k < 2 {
        return Err(CoefficientError::InvalidOrder(k));
    }
    if i > j {
        return Err(CoefficientError::CellOrder { i, j });
    }
    if j > k - 1 {
        return Err(CoefficientError::CellRange { i, j, k });
    }
    let (i, j, k) = (i64::from(i), i64::from(j), i64::from(k));
    Ok(if i == j {
        if i == 0 {
            -(k - 2)
        } else {
            4 - (i + 3) * (k - i)
        }
    } else {
        2 * (i + 1) * (j - (k - 2))
    })
}

/// Populate the full table for order k.
pub fn build_table(k: u32) -> Result<CoefficientTable, CoefficientError> {
    let denominator = denominator(k)?;
    let mut entries = BTreeMap::new();
    for i in 0..k {
        for j in i..k {
            entries.insert((i, j), coefficient(i, j, k)?);
        }
    }
    let cleared_constant = -entries[&(k - 1, k - 1)];
    Ok(CoefficientTable {
        k,
        entries,
        denominator,
        cleared_constant,
    })
}
