//! Symbolic machinery for the telescoped-form proof.
//!
//! The telescoped identity reduces to a claim about coefficient polynomials:
//! after eliminating G_{m+k-1} with the recurrence, the combined coefficient
//! of G_{m+i} G_{m+j} must be 2(k-1) at cell (0,0) and zero on every other
//! cell of the triangle -1 <= i <= j <= k-2. This module mechanizes that
//! claim twice over:
//!
//! - parametrically, by classifying cells into seven sets on which the
//!   coefficient is a single polynomial in i, j, k, assembling the 7x5
//!   contribution ledger, and summing its rows ([`verify_parametric`]);
//! - concretely, by brute-force expansion of both telescoped summands at a
//!   fixed order ([`expand_concrete`]), compared cell by cell against the
//!   ledger ([`verify_concrete`]).

mod ledger;
mod oracle;
mod poly;
mod sets;

pub use ledger::{
    build_ledger, expected_row_sum, verify_parametric, ContributionLedger, LedgerCell,
    ParametricReport, ParametricRow, SummandId,
};
pub use oracle::{
    expand_concrete, verify_concrete, verify_concrete_with, ConcreteCheck, ConcreteCoefficients,
    ConcreteMismatch, ConcreteReport,
};
pub use poly::{Exponents, MonomialDto, Poly, Var};
pub use sets::{classify, triangle_cells, IndexSetId, SymbolicError};

use serde::{Deserialize, Serialize};

use crate::identity::Status;

/// Combined result of the requested proof modes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofReport {
    pub status: Status,
    pub parametric: ParametricReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concrete: Option<ConcreteReport>,
}

impl ProofReport {
    pub fn new(parametric: ParametricReport, concrete: Option<ConcreteReport>) -> Self {
        let pass = parametric.passed() && concrete.as_ref().is_none_or(|c| c.passed());
        ProofReport {
            status: if pass { Status::Pass } else { Status::Fail },
            parametric,
            concrete,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
