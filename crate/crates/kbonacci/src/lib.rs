//! Exact-arithmetic toolkit for sums of squares of k-bonacci numbers.
//!
//! A k-bonacci sequence (order k >= 2) is the linear recurrence in which every
//! term is the sum of the previous k terms, seeded with k-1 zeros and a single 1.
//! The running sum of squares of such a sequence has a closed form: a quadratic
//! form in the k terms G_m..G_{m+k-1} with integer coefficients N_{i,j} over a
//! common denominator D_k = 2(k-1), plus a constant.
//!
//! This crate synthesizes that closed form for any order, verifies it
//! numerically over sweeps of (k, m) with exact big-integer equality, and
//! machine-checks the telescoping proof symbolically: the index cells of the
//! telescoped quadratic form partition into seven sets A..G, the two sides
//! decompose into five summands I..V, and summing the resulting 7x5 ledger of
//! coefficient polynomials row by row must yield D_k at cell (0,0) and zero
//! everywhere else.
//!
//! Modules:
//! - [`sequences`]: exact sequence generation and OEIS b-file cross-checks
//! - [`coefficients`]: the closed-form coefficient table for any order
//! - [`identity`]: numeric verification of the identity and its telescoped form
//! - [`symbolic`]: the polynomial engine, seven-set classification, contribution
//!   ledger, and the brute-force expansion oracle
//! - [`emit`]: text, LaTeX, and JSON renderers

pub mod coefficients;
pub mod emit;
pub mod identity;
pub mod sequences;
pub mod symbolic;

pub(crate) mod serde_util;

pub use coefficients::{build_table, coefficient, denominator, CoefficientError, CoefficientTable};
pub use identity::{
    base_constant, lhs_cleared, rhs_cleared, verify_numeric, verify_telescoped, IdentityError,
    VerificationReport,
};
pub use sequences::{generate, parse_bfile, BFile, RecurrenceSpec, Sequence, SequenceError};
pub use symbolic::{
    build_ledger, classify, expand_concrete, verify_concrete, verify_parametric,
    ContributionLedger, IndexSetId, Poly, SummandId, Var,
};
