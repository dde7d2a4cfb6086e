//! JSON wire forms for tables, ledgers, and sequences.
//!
//! The schemas are stable interfaces: coefficient tables and ledgers round-trip
//! losslessly, and every arbitrary-precision integer travels as a decimal
//! string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::EmitError;
use crate::coefficients::CoefficientTable;
use crate::sequences::Sequence;
use crate::symbolic::{ContributionLedger, IndexSetId, LedgerCell, Poly, SummandId};

#[derive(Debug, Serialize, Deserialize)]
struct TableEntryDto {
    i: u32,
    j: u32,
    n: i64,
}

#[derive(Debug, Serialize, Deserialize)]
struct TableDto {
    k: u32,
    denominator: i64,
    cleared_constant: i64,
    entries: Vec<TableEntryDto>,
}

pub fn table_to_json(table: &CoefficientTable) -> String {
    let dto = TableDto {
        k: table.k,
        denominator: table.denominator,
        cleared_constant: table.cleared_constant,
        entries: table
            .entries
            .iter()
            .map(|(&(i, j), &n)| TableEntryDto { i, j, n })
            .collect(),
    };
    serde_json::to_string_pretty(&dto).expect("table serialization cannot fail")
}

pub fn table_from_json(text: &str) -> Result<CoefficientTable, EmitError> {
    let dto: TableDto = serde_json::from_str(text).map_err(|e| EmitError::Json(e.to_string()))?;
    let mut entries = BTreeMap::new();
    for entry in dto.entries {
        if entries.insert((entry.i, entry.j), entry.n).is_some() {
            return Err(EmitError::Json(format!(
                "duplicate table cell ({}, {})",
                entry.i, entry.j
            )));
        }
    }
    Ok(CoefficientTable {
        k: dto.k,
        entries,
        denominator: dto.denominator,
        cleared_constant: dto.cleared_constant,
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct LedgerCellDto {
    summand: SummandId,
    reference: String,
    poly: Poly,
}

#[derive(Debug, Serialize, Deserialize)]
struct LedgerRowDto {
    set: IndexSetId,
    cells: Vec<LedgerCellDto>,
    sum: Poly,
}

#[derive(Debug, Serialize, Deserialize)]
struct LedgerDto {
    rows: Vec<LedgerRowDto>,
}

pub fn ledger_to_json(ledger: &ContributionLedger) -> String {
    let rows = IndexSetId::ALL
        .into_iter()
        .map(|set| LedgerRowDto {
            set,
            cells: SummandId::ALL
                .into_iter()
                .filter_map(|summand| {
                    ledger.cell(set, summand).map(|cell| LedgerCellDto {
                        summand,
                        reference: cell.reference.clone(),
                        poly: cell.poly.clone(),
                    })
                })
                .collect(),
            sum: ledger.row_sum(set).clone(),
        })
        .collect();
    serde_json::to_string_pretty(&LedgerDto { rows }).expect("ledger serialization cannot fail")
}

pub fn ledger_from_json(text: &str) -> Result<ContributionLedger, EmitError> {
    let dto: LedgerDto = serde_json::from_str(text).map_err(|e| EmitError::Json(e.to_string()))?;
    let mut cells = BTreeMap::new();
    for row in dto.rows {
        for cell in row.cells {
            let key = (row.set, cell.summand);
            if cells
                .insert(
                    key,
                    LedgerCell {
                        reference: cell.reference,
                        poly: cell.poly,
                    },
                )
                .is_some()
            {
                return Err(EmitError::Json(format!(
                    "duplicate ledger cell {:?}/{:?}",
                    key.0, key.1
                )));
            }
        }
    }
    Ok(ContributionLedger::from_cells(cells))
}

#[derive(Debug, Serialize)]
struct SequenceDto {
    k: u32,
    initial: Vec<String>,
    terms: Vec<String>,
}

pub fn sequence_to_json(seq: &Sequence) -> String {
    let dto = SequenceDto {
        k: seq.spec().order(),
        initial: seq.spec().initial().iter().map(|g| g.to_string()).collect(),
        terms: seq.terms().iter().map(|g| g.to_string()).collect(),
    };
    serde_json::to_string_pretty(&dto).expect("sequence serialization cannot fail")
}
