//! Numeric verification of the closed formula and its telescoped form.
//!
//! All comparisons are exact integer equalities; there is no tolerance
//! anywhere. The cleared identity under test is
//!
//!   D_k * sum_{i=0..m} G_i^2  =  sum_{i<=j} N_{i,j} G_{m+i} G_{m+j}  -  N_{k-1,k-1}
//!
//! and its telescoped form (the difference between consecutive m) is
//!
//!   D_k * G_m^2  =  sum_{i<=j} N_{i,j} (G_{m+i} G_{m+j} - G_{m-1+i} G_{m-1+j}).
//!
//! Sweeps recompute the running sum of squares incrementally within a fixed
//! order, so a full (k, m) sweep is linear in the number of terms.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coefficients::{build_table, CoefficientTable};
use crate::sequences::{generate, RecurrenceSpec, Sequence};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error("sequence has {have} terms, need {needed}")]
    InsufficientTerms { needed: usize, have: usize },
    #[error("telescoped check requires m >= 1")]
    TelescopeAtZero,
    #[error("probe range is empty")]
    EmptyProbeRange,
    #[error(
        "constant is not invariant for k={k}: C({baseline_probe}) = {baseline}, C({probe}) = {value}"
    )]
    NonConstant {
        k: u32,
        baseline_probe: usize,
        baseline: Box<BigRational>,
        probe: usize,
        value: Box<BigRational>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One (k, m) pair at which the two cleared sides disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub k: u32,
    pub m: usize,
    #[serde(with = "crate::serde_util::bigint_decimal")]
    pub lhs: BigInt,
    #[serde(with = "crate::serde_util::bigint_decimal")]
    pub rhs: BigInt,
}

/// Outcome of a (k, m) verification sweep. Status is pass iff no failures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub k_range: (u32, u32),
    pub m_max: usize,
    pub status: Status,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

fn require_terms(seq: &Sequence, needed: usize) -> Result<(), IdentityError> {
    if seq.len() < needed {
        return Err(IdentityError::InsufficientTerms {
            needed,
            have: seq.len(),
        });
    }
    Ok(())
}

/// The quadratic form sum_{0<=i<=j<=k-1} N_{i,j} G_{m+i} G_{m+j}.
fn quadratic_form(table: &CoefficientTable, terms: &[BigInt], m: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for (&(i, j), &n) in &table.entries {
        if n == 0 {
            continue;
        }
        acc += BigInt::from(n) * (&terms[m + i as usize] * &terms[m + j as usize]);
    }
    acc
}

/// Left side of the cleared identity: D_k * sum_{i=0..m} G_i^2.
pub fn lhs_cleared(
    table: &CoefficientTable,
    seq: &Sequence,
    m: usize,
) -> Result<BigInt, IdentityError> {
    require_terms(seq, m + 1)?;
    let sum_sq: BigInt = seq.terms()[..=m].iter().map(|g| g * g).sum();
    Ok(BigInt::from(table.denominator) * sum_sq)
}

/// Right side of the cleared identity:
/// sum N_{i,j} G_{m+i} G_{m+j} - N_{k-1,k-1}.
pub fn rhs_cleared(
    table: &CoefficientTable,
    seq: &Sequence,
    m: usize,
) -> Result<BigInt, IdentityError> {
    require_terms(seq, m + table.k as usize)?;
    Ok(quadratic_form(table, seq.terms(), m) + table.cleared_constant)
}

/// Compare both cleared sides for m = 0..=m_max against a given table,
/// reusing a running sum of squares. Returns every disagreement.
pub fn sweep_failures(table: &CoefficientTable, seq: &Sequence, m_max: usize) -> Vec<Failure> {
    let k = table.k as usize;
    assert!(
        seq.len() >= m_max + k,
        "sequence too short for sweep: have {}, need {}",
        seq.len(),
        m_max + k
    );
    let terms = seq.terms();
    let mut failures = Vec::new();
    let mut running_sq = BigInt::zero();
    for m in 0..=m_max {
        running_sq += &terms[m] * &terms[m];
        let lhs = BigInt::from(table.denominator) * &running_sq;
        let rhs = quadratic_form(table, terms, m) + table.cleared_constant;
        if lhs != rhs {
            failures.push(Failure {
                k: table.k,
                m,
                lhs,
                rhs,
            });
        }
    }
    failures
}

/// Verify the cleared identity for every k in `k_range` (inclusive) and
/// every m in 0..=m_max, with standard initial conditions.
///
/// Failures are collected into the report, never thrown.
pub fn verify_numeric(k_range: (u32, u32), m_max: usize) -> VerificationReport {
    let (k_lo, k_hi) = k_range;
    assert!(k_lo >= 2 && k_lo <= k_hi, "need 2 <= k_lo <= k_hi");
    let mut failures = Vec::new();
    for k in k_lo..=k_hi {
        let table = build_table(k).expect("k >= 2 checked");
        let spec = RecurrenceSpec::standard(k).expect("k >= 2 checked");
        let seq = generate(&spec, m_max + k as usize).expect("positive count");
        failures.extend(sweep_failures(&table, &seq, m_max));
    }
    VerificationReport {
        k_range,
        m_max,
        status: if failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        failures,
    }
}

/// Check the telescoped form at a single m >= 1:
/// D_k * G_m^2 = sum N_{i,j} (G_{m+i} G_{m+j} - G_{m-1+i} G_{m-1+j}).
pub fn verify_telescoped(
    table: &CoefficientTable,
    seq: &Sequence,
    m: usize,
) -> Result<bool, IdentityError> {
    if m == 0 {
        return Err(IdentityError::TelescopeAtZero);
    }
    require_terms(seq, m + table.k as usize)?;
    let terms = seq.terms();
    let lhs = BigInt::from(table.denominator) * (&terms[m] * &terms[m]);
    let rhs = quadratic_form(table, terms, m) - quadratic_form(table, terms, m - 1);
    Ok(lhs == rhs)
}

/// Sweep the telescoped form over k_range (inclusive) and m in 1..=m_max.
pub fn verify_telescoped_sweep(k_range: (u32, u32), m_max: usize) -> VerificationReport {
    let (k_lo, k_hi) = k_range;
    assert!(k_lo >= 2 && k_lo <= k_hi, "need 2 <= k_lo <= k_hi");
    let mut failures = Vec::new();
    for k in k_lo..=k_hi {
        let table = build_table(k).expect("k >= 2 checked");
        let spec = RecurrenceSpec::standard(k).expect("k >= 2 checked");
        let seq = generate(&spec, m_max + k as usize).expect("positive count");
        let terms = seq.terms();
        for m in 1..=m_max {
            let lhs = BigInt::from(table.denominator) * (&terms[m] * &terms[m]);
            let rhs = quadratic_form(&table, terms, m) - quadratic_form(&table, terms, m - 1);
            if lhs != rhs {
                failures.push(Failure { k, m, lhs, rhs });
            }
        }
    }
    VerificationReport {
        k_range,
        m_max,
        status: if failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        failures,
    }
}

/// The additive constant the identity needs for a given recurrence:
/// C(m) = (D_k * sum_{i=0..m} G_i^2 - sum N_{i,j} G_{m+i} G_{m+j}) / D_k,
/// measured at every probe m. Telescoping makes C independent of m, so a
/// divergence between probes is reported as a finding rather than averaged.
///
/// For standard initial conditions C equals -N_{k-1,k-1} / D_k.
pub fn base_constant(
    spec: &RecurrenceSpec,
    probes: RangeInclusive<usize>,
) -> Result<BigRational, IdentityError> {
    if probes.is_empty() {
        return Err(IdentityError::EmptyProbeRange);
    }
    let k = spec.order();
    let table = build_table(k).expect("spec order is >= 2");
    let (&first, &last) = (probes.start(), probes.end());
    let seq = generate(spec, last + k as usize).expect("positive count");
    let terms = seq.terms();
    let denom = BigInt::from(table.denominator);

    let mut running_sq: BigInt = terms[..=first].iter().map(|g| g * g).sum();
    let mut baseline: Option<BigRational> = None;
    for m in probes {
        if m > first {
            running_sq += &terms[m] * &terms[m];
        }
        let numer = &denom * &running_sq - quadratic_form(&table, terms, m);
        let value = BigRational::new(numer, denom.clone());
        match &baseline {
            None => baseline = Some(value),
            Some(base) if *base == value => {}
            Some(base) => {
                return Err(IdentityError::NonConstant {
                    k,
                    baseline_probe: first,
                    baseline: Box::new(base.clone()),
                    probe: m,
                    value: Box::new(value),
                })
            }
        }
    }
    Ok(baseline.expect("nonempty probe range"))
}

/// The constant implied by standard initial conditions, -N_{k-1,k-1} / D_k.
pub fn default_constant(table: &CoefficientTable) -> BigRational {
    BigRational::new(
        BigInt::from(table.cleared_constant),
        BigInt::from(table.denominator),
    )
}

/// One failed constancy check: either the default-initial-condition constant
/// came out wrong, or a random initial vector produced a probe-dependent value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantFailure {
    pub k: u32,
    pub initial: Vec<String>,
    pub kind: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantReport {
    pub k_range: (u32, u32),
    pub random_vectors: usize,
    pub probe_range: (usize, usize),
    pub seed: u64,
    pub status: Status,
    pub failures: Vec<ConstantFailure>,
}

impl ConstantReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

// Deterministic stream for random initial vectors; stdout must be
// byte-identical across runs and toolchains for fixed argv.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw from [-9, 9]; bias is irrelevant for fuzzing inputs.
    fn small_entry(&mut self) -> i64 {
        (self.next() % 19) as i64 - 9
    }
}

/// For each k in range: check the default-initial-condition constant equals
/// -N_{k-1,k-1} / D_k, then draw `random_vectors` initial vectors with
/// entries in [-9, 9] and require the measured constant to be invariant
/// across all probes.
pub fn verify_constant(
    k_range: (u32, u32),
    random_vectors: usize,
    probes: RangeInclusive<usize>,
    seed: u64,
) -> ConstantReport {
    let (k_lo, k_hi) = k_range;
    assert!(k_lo >= 2 && k_lo <= k_hi, "need 2 <= k_lo <= k_hi");
    assert!(!probes.is_empty(), "probe range must be nonempty");
    let mut failures = Vec::new();
    let mut rng = SplitMix64(seed);
    for k in k_lo..=k_hi {
        let table = build_table(k).expect("k >= 2 checked");
        let spec = RecurrenceSpec::standard(k).expect("k >= 2 checked");
        match base_constant(&spec, probes.clone()) {
            Ok(value) if value == default_constant(&table) => {}
            Ok(value) => failures.push(ConstantFailure {
                k,
                initial: spec.initial().iter().map(|g| g.to_string()).collect(),
                kind: "unexpected-default-constant".into(),
                detail: format!("expected {}, measured {}", default_constant(&table), value),
            }),
            Err(err) => failures.push(ConstantFailure {
                k,
                initial: spec.initial().iter().map(|g| g.to_string()).collect(),
                kind: "non-constant".into(),
                detail: err.to_string(),
            }),
        }
        for _ in 0..random_vectors {
            let initial: Vec<BigInt> = (0..k).map(|_| BigInt::from(rng.small_entry())).collect();
            let spec = RecurrenceSpec::with_initial(k, initial.clone()).expect("length matches k");
            if let Err(err) = base_constant(&spec, probes.clone()) {
                failures.push(ConstantFailure {
                    k,
                    initial: initial.iter().map(|g| g.to_string()).collect(),
                    kind: "non-constant".into(),
                    detail: err.to_string(),
                });
            }
        }
    }
    ConstantReport {
        k_range,
        random_vectors,
        probe_range: (*probes.start(), *probes.end()),
        seed,
        status: if failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard_pair(k: u32, len: usize) -> (CoefficientTable, Sequence) {
        let table = build_table(k).unwrap();
        let seq = generate(&RecurrenceSpec::standard(k).unwrap(), len).unwrap();
        (table, seq)
    }

    #[test]
    fn lhs_examples() {
        let (t2, s2) = standard_pair(2, 8);
        assert_eq!(lhs_cleared(&t2, &s2, 5).unwrap(), BigInt::from(80));
        let (t3, s3) = standard_pair(3, 4);
        assert_eq!(lhs_cleared(&t3, &s3, 0).unwrap(), BigInt::zero());
        let (t4, s4) = standard_pair(4, 8);
        assert_eq!(lhs_cleared(&t4, &s4, 3).unwrap(), BigInt::from(6));
    }

    #[test]
    fn rhs_examples() {
        let (t2, s2) = standard_pair(2, 8);
        assert_eq!(rhs_cleared(&t2, &s2, 5).unwrap(), BigInt::from(80));
        for k in 2..=12 {
            let (t, s) = standard_pair(k, k as usize + 1);
            assert_eq!(rhs_cleared(&t, &s, 0).unwrap(), BigInt::zero(), "k={k}");
        }
        let (t3, s3) = standard_pair(3, 10);
        assert_eq!(
            rhs_cleared(&t3, &s3, 4).unwrap(),
            lhs_cleared(&t3, &s3, 4).unwrap()
        );
    }

    #[test]
    fn insufficient_terms_are_rejected() {
        let (t3, s3) = standard_pair(3, 4);
        assert_eq!(
            lhs_cleared(&t3, &s3, 7),
            Err(IdentityError::InsufficientTerms { needed: 8, have: 4 })
        );
        assert_eq!(
            rhs_cleared(&t3, &s3, 2),
            Err(IdentityError::InsufficientTerms { needed: 5, have: 4 })
        );
    }

    #[test]
    fn numeric_sweep_passes_small_orders() {
        let report = verify_numeric((2, 6), 50);
        assert!(report.passed(), "failures: {:?}", report.failures);
    }

    #[test]
    fn sabotaged_table_is_detected() {
        let mut table = build_table(4).unwrap();
        *table.entries.get_mut(&(0, 0)).unwrap() += 1;
        let seq = generate(&RecurrenceSpec::standard(4).unwrap(), 60).unwrap();
        let failures = sweep_failures(&table, &seq, 50);
        assert!(!failures.is_empty());
    }

    #[test]
    fn telescoped_spot_checks() {
        let (t3, s3) = standard_pair(3, 10);
        assert!(verify_telescoped(&t3, &s3, 3).unwrap());
        let (t2, s2) = standard_pair(2, 10);
        assert!(verify_telescoped(&t2, &s2, 1).unwrap());
        let (t6, s6) = standard_pair(6, 20);
        assert!(verify_telescoped(&t6, &s6, 10).unwrap());
        assert_eq!(
            verify_telescoped(&t3, &s3, 0),
            Err(IdentityError::TelescopeAtZero)
        );
    }

    // Whenever the full identity holds at m and m-1, the telescoped form
    // must hold at m; the sweeps below exercise both at once.
    #[test]
    fn telescoping_is_consistent_with_direct_verification() {
        for k in 2..=6u32 {
            let (table, seq) = standard_pair(k, 50);
            for m in 1..=40usize {
                let direct_prev = lhs_cleared(&table, &seq, m - 1).unwrap()
                    == rhs_cleared(&table, &seq, m - 1).unwrap();
                let direct_here =
                    lhs_cleared(&table, &seq, m).unwrap() == rhs_cleared(&table, &seq, m).unwrap();
                assert!(direct_prev && direct_here, "k={k} m={m}");
                assert!(verify_telescoped(&table, &seq, m).unwrap(), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn base_constant_default_values() {
        let c3 = base_constant(&RecurrenceSpec::standard(3).unwrap(), 0..=10).unwrap();
        assert_eq!(c3, BigRational::new(BigInt::from(1), BigInt::from(4)));
        let c6 = base_constant(&RecurrenceSpec::standard(6).unwrap(), 0..=10).unwrap();
        assert_eq!(c6, BigRational::new(BigInt::from(4), BigInt::from(10)));
    }

    #[test]
    fn base_constant_custom_initial_conditions() {
        let spec = RecurrenceSpec::with_initial(2, vec![BigInt::from(1), BigInt::from(1)]).unwrap();
        let value = base_constant(&spec, 1..=20).unwrap();
        let at_one = base_constant(&spec, 1..=1).unwrap();
        assert_eq!(value, at_one);
    }

    #[test]
    fn base_constant_rejects_empty_probes() {
        let spec = RecurrenceSpec::standard(2).unwrap();
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 5..=4;
        assert_eq!(
            base_constant(&spec, empty),
            Err(IdentityError::EmptyProbeRange)
        );
    }

    #[test]
    fn constant_sweep_passes() {
        let report = verify_constant((2, 5), 5, 1..=15, 7);
        assert!(report.passed(), "failures: {:?}", report.failures);
    }

    #[test]
    fn report_json_schema_is_stable() {
        let report = VerificationReport {
            k_range: (2, 3),
            m_max: 1,
            status: Status::Fail,
            failures: vec![Failure {
                k: 2,
                m: 1,
                lhs: BigInt::from(4),
                rhs: BigInt::from(5),
            }],
        };
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            r#"{"k_range":[2,3],"m_max":1,"status":"fail","failures":[{"k":2,"m":1,"lhs":"4","rhs":"5"}]}"#
        );
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
