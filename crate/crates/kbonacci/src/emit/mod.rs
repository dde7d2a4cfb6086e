//! Text, LaTeX, and JSON renderers for identities, coefficient tables, and
//! proof ledgers.
//!
//! Sign conventions follow the displayed identities: negative coefficients
//! render with a leading minus, the constant comes last inside the
//! parentheses, and zero-coefficient terms are omitted. The order-2 identity
//! is printed in reduced form (the single product with no denominator); its
//! JSON carries the unreduced cleared form for machine use.

mod json;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use json::{
    ledger_from_json, ledger_to_json, sequence_to_json, table_from_json, table_to_json,
};

use crate::coefficients::{build_table, CoefficientError, CoefficientTable};
use crate::symbolic::{build_ledger, ContributionLedger, IndexSetId, SummandId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmitError {
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

/// What to render. Targets that depend on an order carry it; the ledger
/// targets are fully symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderTarget {
    /// The closed identity for one order.
    Identity { k: u32 },
    /// Diagonal coefficients for every order 2..=k_max, one row per order.
    DiagTable { k_max: u32 },
    /// Off-diagonal coefficient triangle for a single order.
    OffdiagTable { k: u32 },
    /// The 7x5 grid of N-references.
    LedgerSymbolic,
    /// The 7x5 grid of expanded polynomials plus the row-sum column.
    LedgerEvaluated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderRequest {
    pub target: RenderTarget,
    pub format: Format,
}

/// The identity for one order in structured form: nonzero terms ordered
/// diagonals first, then off-diagonals by (i, j), then the constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityForm {
    pub k: u32,
    pub denominator: i64,
    pub terms: Vec<IdentityTerm>,
    pub constant: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityTerm {
    pub i: u32,
    pub j: u32,
    pub coeff: i64,
}

/// Extract the renderable form of a table's identity, dropping zero terms.
pub fn identity_form(table: &CoefficientTable) -> IdentityForm {
    let mut terms = Vec::new();
    for i in 0..table.k {
        let coeff = table.entries[&(i, i)];
        if coeff != 0 {
            terms.push(IdentityTerm { i, j: i, coeff });
        }
    }
    for (&(i, j), &coeff) in &table.entries {
        if i < j && coeff != 0 {
            terms.push(IdentityTerm { i, j, coeff });
        }
    }
    IdentityForm {
        k: table.k,
        denominator: table.denominator,
        terms,
        constant: table.cleared_constant,
    }
}

fn g_factor(offset: u32, latex: bool) -> String {
    match (offset, latex) {
        (0, false) => "G_m".to_string(),
        (0, true) => "G_{m}".to_string(),
        (i, _) => format!("G_{{m+{i}}}"),
    }
}

/// Join signed terms "coeff * body": a leading minus binds to the first
/// term, later terms attach with " + " or " - ". An empty body means a bare
/// constant.
fn join_signed(parts: &[(i64, String)]) -> String {
    let mut out = String::new();
    for (idx, (coeff, body)) in parts.iter().enumerate() {
        let mag = coeff.unsigned_abs();
        if idx == 0 {
            if *coeff < 0 {
                out.push('-');
            }
        } else if *coeff < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if body.is_empty() {
            let _ = write!(out, "{mag}");
        } else if mag == 1 {
            out.push_str(body);
        } else {
            let _ = write!(out, "{mag} {body}");
        }
    }
    out
}

fn identity_body(form: &IdentityForm, latex: bool) -> String {
    let mut parts: Vec<(i64, String)> = form
        .terms
        .iter()
        .map(|t| {
            let body = if t.i == t.j {
                format!("{}^2", g_factor(t.i, latex))
            } else {
                format!("{} {}", g_factor(t.i, latex), g_factor(t.j, latex))
            };
            (t.coeff, body)
        })
        .collect();
    if form.constant != 0 {
        parts.push((form.constant, String::new()));
    }
    join_signed(&parts)
}

/// Render the closed identity for one order.
pub fn render_identity(k: u32, format: Format) -> Result<String, EmitError> {
    let table = build_table(k)?;
    let form = identity_form(&table);
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&form).expect("form serialization"),
        Format::Text => {
            if k == 2 {
                "sum_{i=0..m} G_i^2 = G_m G_{m+1}".to_string()
            } else {
                format!(
                    "sum_{{i=0..m}} G_i^2 = (1/{})({})",
                    form.denominator,
                    identity_body(&form, false)
                )
            }
        }
        Format::Latex => {
            if k == 2 {
                r"\sum_{i=0}^{m} G_i^2 = G_{m} G_{m+1}".to_string()
            } else {
                format!(
                    r"\sum_{{i=0}}^{{m}} G_i^2 = \frac{{1}}{{{}}}\left({}\right)",
                    form.denominator,
                    identity_body(&form, true)
                )
            }
        }
    })
}

/// Right-align every column; blank cells stay blank.
fn render_grid(header: Vec<String>, rows: Vec<Vec<String>>) -> String {
    let columns = header.len();
    let mut widths = vec![0usize; columns];
    for row in std::iter::once(&header).chain(rows.iter()) {
        for (c, cell) in row.iter().enumerate() {
            widths[c] = widths[c].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(rows.iter()) {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{cell:>width$}", width = widths[c]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn render_latex_grid(header: Vec<String>, rows: Vec<Vec<String>>) -> String {
    let columns = header.len();
    let spec = format!("c|{}", "c".repeat(columns - 1));
    let mut out = format!("\\begin{{tabular}}{{{spec}}}\n");
    let _ = writeln!(out, "{} \\\\", header.join(" & "));
    out.push_str("\\hline\n");
    for row in rows {
        let _ = writeln!(out, "{} \\\\", row.join(" & "));
    }
    out.push_str("\\end{tabular}\n");
    out
}

fn diag_rows(k_max: u32) -> Result<Vec<(u32, Vec<i64>)>, EmitError> {
    (2..=k_max)
        .map(|k| Ok((k, build_table(k)?.diagonal())))
        .collect()
}

fn render_diag(k_max: u32, format: Format) -> Result<String, EmitError> {
    if k_max < 2 {
        return Err(EmitError::Coefficient(CoefficientError::InvalidOrder(
            k_max,
        )));
    }
    let rows = diag_rows(k_max)?;
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct RowDto {
                k: u32,
                diagonal: Vec<i64>,
            }
            #[derive(Serialize)]
            struct DiagDto {
                k_max: u32,
                rows: Vec<RowDto>,
            }
            let dto = DiagDto {
                k_max,
                rows: rows
                    .into_iter()
                    .map(|(k, diagonal)| RowDto { k, diagonal })
                    .collect(),
            };
            serde_json::to_string_pretty(&dto).expect("diag serialization")
        }
        Format::Text | Format::Latex => {
            let mut header = vec![String::new()];
            header.extend((0..k_max).map(|i| format!("i={i}")));
            let body: Vec<Vec<String>> = rows
                .into_iter()
                .map(|(k, diagonal)| {
                    let mut row = vec![format!("k={k}")];
                    row.extend(diagonal.iter().map(|n| n.to_string()));
                    row.resize(header.len(), String::new());
                    row
                })
                .collect();
            if format == Format::Text {
                render_grid(header, body)
            } else {
                render_latex_grid(header, body)
            }
        }
    })
}

fn render_offdiag(k: u32, format: Format) -> Result<String, EmitError> {
    let table = build_table(k)?;
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct CellDto {
                i: u32,
                j: u32,
                n: i64,
            }
            #[derive(Serialize)]
            struct OffdiagDto {
                k: u32,
                cells: Vec<CellDto>,
            }
            let dto = OffdiagDto {
                k,
                cells: table
                    .entries
                    .iter()
                    .filter(|(&(i, j), _)| i < j)
                    .map(|(&(i, j), &n)| CellDto { i, j, n })
                    .collect(),
            };
            serde_json::to_string_pretty(&dto).expect("offdiag serialization")
        }
        Format::Text | Format::Latex => {
            let mut header = vec![format!("k={k}")];
            header.extend((1..k).map(|j| format!("j={j}")));
            let body: Vec<Vec<String>> = (0..k - 1)
                .map(|i| {
                    let mut row = vec![format!("i={i}")];
                    row.extend((1..k).map(|j| {
                        if j > i {
                            table.entries[&(i, j)].to_string()
                        } else {
                            String::new()
                        }
                    }));
                    row
                })
                .collect();
            if format == Format::Text {
                render_grid(header, body)
            } else {
                render_latex_grid(header, body)
            }
        }
    })
}

fn ledger_grid(
    ledger: &ContributionLedger,
    cell_text: impl Fn(IndexSetId, SummandId) -> String,
    sum_column: bool,
) -> (Vec<String>, Vec<Vec<String>>) {
    let mut header = vec![String::new()];
    header.extend(SummandId::ALL.iter().map(|s| format!("Summand-{s}")));
    if sum_column {
        header.push("Sum".to_string());
    }
    let body = IndexSetId::ALL
        .into_iter()
        .map(|set| {
            let mut row = vec![set.to_string()];
            row.extend(
                SummandId::ALL
                    .iter()
                    .map(|&summand| cell_text(set, summand)),
            );
            if sum_column {
                row.push(ledger.row_sum(set).to_string());
            }
            row
        })
        .collect();
    (header, body)
}

fn render_ledger(evaluated: bool, format: Format) -> String {
    let ledger = build_ledger();
    match format {
        Format::Json => {
            if evaluated {
                ledger_to_json(&ledger)
            } else {
                #[derive(Serialize)]
                struct CellDto {
                    summand: SummandId,
                    reference: String,
                }
                #[derive(Serialize)]
                struct RowDto {
                    set: IndexSetId,
                    cells: Vec<CellDto>,
                }
                #[derive(Serialize)]
                struct SymbolicDto {
                    rows: Vec<RowDto>,
                }
                let dto = SymbolicDto {
                    rows: IndexSetId::ALL
                        .into_iter()
                        .map(|set| RowDto {
                            set,
                            cells: SummandId::ALL
                                .into_iter()
                                .filter_map(|summand| {
                                    ledger.cell(set, summand).map(|cell| CellDto {
                                        summand,
                                        reference: cell.reference.clone(),
                                    })
                                })
                                .collect(),
                        })
                        .collect(),
                };
                serde_json::to_string_pretty(&dto).expect("ledger serialization")
            }
        }
        Format::Text | Format::Latex => {
            let cell_text = |set: IndexSetId, summand: SummandId| {
                ledger
                    .cell(set, summand)
                    .map(|cell| {
                        if evaluated {
                            cell.poly.to_string()
                        } else {
                            cell.reference.clone()
                        }
                    })
                    .unwrap_or_default()
            };
            let (header, body) = ledger_grid(&ledger, cell_text, evaluated);
            if format == Format::Text {
                render_grid(header, body)
            } else {
                render_latex_grid(header, body)
            }
        }
    }
}

/// Render any table target in the requested format.
pub fn render_table(request: &RenderRequest) -> Result<String, EmitError> {
    match request.target {
        RenderTarget::Identity { k } => render_identity(k, request.format),
        RenderTarget::DiagTable { k_max } => render_diag(k_max, request.format),
        RenderTarget::OffdiagTable { k } => render_offdiag(k, request.format),
        RenderTarget::LedgerSymbolic => Ok(render_ledger(false, request.format)),
        RenderTarget::LedgerEvaluated => Ok(render_ledger(true, request.format)),
    }
}

/// Full coefficient listing for one order: scalars plus both triangles.
pub fn render_coefficients(table: &CoefficientTable, format: Format) -> Result<String, EmitError> {
    Ok(match format {
        Format::Json => table_to_json(table),
        Format::Text | Format::Latex => {
            let mut out = String::new();
            let _ = writeln!(out, "order k = {}", table.k);
            let _ = writeln!(out, "denominator D = {}", table.denominator);
            let _ = writeln!(out, "cleared constant = {}", table.cleared_constant);
            let _ = writeln!(out, "diagonal:");
            out.push_str(&render_diag_single(table, format == Format::Latex));
            let _ = writeln!(out, "off-diagonal:");
            out.push_str(&render_offdiag(table.k, format)?);
            out
        }
    })
}

fn render_diag_single(table: &CoefficientTable, latex: bool) -> String {
    let mut header = vec![format!("k={}", table.k)];
    header.extend((0..table.k).map(|i| format!("i={i}")));
    let mut row = vec![String::new()];
    row.extend(table.diagonal().iter().map(|n| n.to_string()));
    if latex {
        render_latex_grid(header, vec![row])
    } else {
        render_grid(header, vec![row])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn identity_text_for_order_three() {
        let text = render_identity(3, Format::Text).unwrap();
        assert_eq!(
            text,
            "sum_{i=0..m} G_i^2 = (1/4)(-G_m^2 - 4 G_{m+1}^2 - G_{m+2}^2 + 2 G_m G_{m+2} + 4 G_{m+1} G_{m+2} + 1)"
        );
    }

    #[test]
    fn identity_text_for_order_two_is_reduced() {
        assert_eq!(
            render_identity(2, Format::Text).unwrap(),
            "sum_{i=0..m} G_i^2 = G_m G_{m+1}"
        );
    }

    #[test]
    fn identity_latex_mentions_fraction_and_constant() {
        let latex = render_identity(5, Format::Latex).unwrap();
        assert!(latex.contains(r"\frac{1}{8}"), "{latex}");
        assert!(latex.ends_with(r"+ 3\right)"), "{latex}");
    }

    #[test]
    fn identity_form_drops_only_zero_terms() {
        for k in 2..=12 {
            let table = build_table(k).unwrap();
            let form = identity_form(&table);
            let nonzero = table.entries.values().filter(|&&n| n != 0).count();
            assert_eq!(form.terms.len(), nonzero, "k={k}");
        }
    }

    #[test]
    fn identity_json_keeps_cleared_form_for_order_two() {
        let json = render_identity(2, Format::Json).unwrap();
        let form: IdentityForm = serde_json::from_str(&json).unwrap();
        assert_eq!(form.denominator, 2);
        assert_eq!(
            form.terms,
            vec![IdentityTerm {
                i: 0,
                j: 1,
                coeff: 2
            }]
        );
        assert_eq!(form.constant, 0);
    }

    #[test]
    fn diag_table_text_matches_published_rows() {
        let text = render_diag(6, Format::Text).unwrap();
        let expected = concat!(
            "     i=0  i=1  i=2  i=3  i=4  i=5\n",
            "k=2    0    0\n",
            "k=3   -1   -4   -1\n",
            "k=4   -2   -8   -6   -2\n",
            "k=5   -3  -12  -11   -8   -3\n",
            "k=6   -4  -16  -16  -14  -10   -4\n",
        );
        assert_eq!(text, expected);
    }

    #[test]
    fn offdiag_table_text_matches_published_triangle() {
        let text = render_offdiag(6, Format::Text).unwrap();
        let expected = concat!(
            "k=6  j=1  j=2  j=3  j=4  j=5\n",
            "i=0   -6   -4   -2    0    2\n",
            "i=1        -8   -4    0    4\n",
            "i=2             -6    0    6\n",
            "i=3                   0    8\n",
            "i=4                       10\n",
        );
        assert_eq!(text, expected);
    }

    #[test]
    fn table_json_round_trip() {
        let table = build_table(7).unwrap();
        let back = table_from_json(&table_to_json(&table)).unwrap();
        assert_eq!(back, table);
    }

    #[test]
    fn ledger_json_round_trip() {
        let ledger = build_ledger();
        let back = ledger_from_json(&ledger_to_json(&ledger)).unwrap();
        assert_eq!(back, ledger);
    }

    #[test]
    fn ledger_from_json_rejects_duplicates() {
        let ledger = build_ledger();
        let json = ledger_to_json(&ledger);
        let mut value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let rows = value["rows"].as_array_mut().unwrap();
        let duplicate = rows[0]["cells"][0].clone();
        rows[0]["cells"].as_array_mut().unwrap().push(duplicate);
        let result = ledger_from_json(&value.to_string());
        assert!(matches!(result, Err(EmitError::Json(_))));
    }

    #[test]
    fn evaluated_ledger_text_has_sum_column() {
        let text = render_table(&RenderRequest {
            target: RenderTarget::LedgerEvaluated,
            format: Format::Text,
        })
        .unwrap();
        let header = text.lines().next().unwrap();
        assert!(header.contains("Summand-I") && header.contains("Sum"));
        let row_b = text.lines().find(|l| l.starts_with('B')).unwrap();
        assert!(row_b.trim_end().ends_with("2k - 2"), "{row_b}");
    }

    #[test]
    fn symbolic_ledger_text_shows_references() {
        let text = render_table(&RenderRequest {
            target: RenderTarget::LedgerSymbolic,
            format: Format::Text,
        })
        .unwrap();
        assert!(text.contains("N_{k-1,k-1}"));
        assert!(text.contains("-N_{0,j+1}"));
    }

    #[test]
    fn latex_tables_are_balanced() {
        for target in [
            RenderTarget::DiagTable { k_max: 6 },
            RenderTarget::OffdiagTable { k: 6 },
            RenderTarget::LedgerSymbolic,
            RenderTarget::LedgerEvaluated,
        ] {
            let out = render_table(&RenderRequest {
                target,
                format: Format::Latex,
            })
            .unwrap();
            assert!(out.starts_with("\\begin{tabular}"));
            assert!(out.ends_with("\\end{tabular}\n"));
        }
    }

    #[test]
    fn sequence_json_uses_decimal_strings() {
        let spec = crate::sequences::RecurrenceSpec::standard(2).unwrap();
        let seq = crate::sequences::generate(&spec, 5).unwrap();
        let json = sequence_to_json(&seq);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["k"], 2);
        assert_eq!(value["terms"][4], "3");
    }

    #[test]
    fn table_from_json_rejects_duplicate_cells() {
        let mut entries = BTreeMap::new();
        entries.insert((0u32, 0u32), 0i64);
        let table = CoefficientTable {
            k: 2,
            entries,
            denominator: 2,
            cleared_constant: 0,
        };
        let json = table_to_json(&table);
        let doubled = json.replacen(
            "\"entries\": [",
            "\"entries\": [\n    { \"i\": 0, \"j\": 0, \"n\": 5 },",
            1,
        );
        assert!(matches!(table_from_json(&doubled), Err(EmitError::Json(_))));
    }
}
