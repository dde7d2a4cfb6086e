//! The seven-set partition of the telescoped index triangle.
//!
//! After telescoping and eliminating G_{m+k-1} via the recurrence, the
//! quadratic form runs over cells (i, j) with -1 <= i <= j <= k-2. Those
//! cells split into seven sets:
//!
//!   A: i = -1, j = -1
//!   B: i = 0,  j = 0
//!   C: 1 <= i <= k-2, j = i
//!   D: i = -1, 0 <= j <= k-3
//!   E: i = -1, j = k-2
//!   F: 0 <= i <= k-4, i+1 <= j <= k-3
//!   G: 0 <= i <= k-3, j = k-2
//!
//! The combined coefficient polynomial is uniform on each set, so seven
//! polynomial identities settle the whole triangle for every order at once.
//! Some sets are empty at small k (C, D, G at k=2; F for k <= 3); their
//! membership predicates simply never fire.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("order k must be >= 2, got {0}")]
    InvalidOrder(u32),
    #[error("cell ({i}, {j}) outside the triangle -1 <= i <= j <= {}", i64::from(*k) - 2)]
    CellOutsideTriangle { i: i64, j: i64, k: u32 },
}

/// Identifier of one of the seven index sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IndexSetId {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl IndexSetId {
    pub const ALL: [IndexSetId; 7] = [
        IndexSetId::A,
        IndexSetId::B,
        IndexSetId::C,
        IndexSetId::D,
        IndexSetId::E,
        IndexSetId::F,
        IndexSetId::G,
    ];

    /// The defining inequalities, checked literally. Used by the partition
    /// tests as a route independent of `classify`'s dispatch order.
    pub fn contains(self, i: i64, j: i64, k: u32) -> bool {
        let k = i64::from(k);
        match self {
            IndexSetId::A => i == -1 && j == -1,
            IndexSetId::B => i == 0 && j == 0,
            IndexSetId::C => (1..=k - 2).contains(&i) && j == i,
            IndexSetId::D => i == -1 && (0..=k - 3).contains(&j),
            IndexSetId::E => i == -1 && j == k - 2,
            IndexSetId::F => (0..=k - 4).contains(&i) && (i + 1..=k - 3).contains(&j),
            IndexSetId::G => (0..=k - 3).contains(&i) && j == k - 2,
        }
    }
}

impl fmt::Display for IndexSetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Classify a cell of the triangle into its unique set.
pub fn classify(i: i64, j: i64, k: u32) -> Result<IndexSetId, SymbolicError> {
    if k < 2 {
        return Err(SymbolicError::InvalidOrder(k));
    }
    let kk = i64::from(k);
    if i < -1 || i > j || j > kk - 2 {
        return Err(SymbolicError::CellOutsideTriangle { i, j, k });
    }
    Ok(if i == -1 && j == -1 {
        IndexSetId::A
    } else if i == 0 && j == 0 {
        IndexSetId::B
    } else if i >= 1 && i == j {
        IndexSetId::C
    } else if i == -1 && j == kk - 2 {
        IndexSetId::E
    } else if i == -1 {
        IndexSetId::D
    } else if j == kk - 2 {
        IndexSetId::G
    } else {
        IndexSetId::F
    })
}

/// All cells (i, j) with -1 <= i <= j <= k-2 in lexicographic order.
pub fn triangle_cells(k: u32) -> impl Iterator<Item = (i64, i64)> {
    let top = i64::from(k) - 2;
    (-1..=top).flat_map(move |i| (i..=top).map(move |j| (i, j)))
}
