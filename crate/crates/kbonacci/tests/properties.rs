//! Property-based invariants: sequence generation, b-file parsing, and the
//! polynomial engine's substitution homomorphism.

use num_bigint::BigInt;
use proptest::prelude::*;

use kbonacci::sequences::{generate, parse_bfile, RecurrenceSpec};
use kbonacci::symbolic::{Poly, Var};

fn order_and_initial() -> impl Strategy<Value = (u32, Vec<i64>)> {
    (2u32..=8).prop_flat_map(|k| {
        prop::collection::vec(-9i64..=9, k as usize).prop_map(move |init| (k, init))
    })
}

fn spec_from(k: u32, init: &[i64]) -> RecurrenceSpec {
    RecurrenceSpec::with_initial(k, init.iter().map(|&v| BigInt::from(v)).collect()).unwrap()
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..=2, 0u32..=2, 0u32..=2), -20i64..=20), 0..6)
        .prop_map(Poly::from_terms)
}

/// Integer-affine replacement expressions, the substitution contract's domain.
fn affine() -> impl Strategy<Value = Poly> {
    (-5i64..=5, -5i64..=5, -5i64..=5, -5i64..=5).prop_map(|(c0, ci, cj, ck)| {
        Poly::constant(c0)
            + Poly::var(Var::I) * ci
            + Poly::var(Var::J) * cj
            + Poly::var(Var::K) * ck
    })
}

fn variable() -> impl Strategy<Value = Var> {
    prop_oneof![Just(Var::I), Just(Var::J), Just(Var::K)]
}

proptest! {
    #[test]
    fn every_term_is_the_sum_of_the_previous_k((k, init) in order_and_initial(), n in 10usize..60) {
        let spec = spec_from(k, &init);
        let seq = generate(&spec, n).unwrap();
        let terms = seq.terms();
        let prefix = init.len().min(n);
        prop_assert_eq!(&terms[..prefix], &spec.initial()[..prefix]);
        for m in k as usize..terms.len() {
            let window: BigInt = terms[m - k as usize..m].iter().sum();
            prop_assert_eq!(&terms[m], &window);
        }
    }

    #[test]
    fn generating_one_more_term_only_appends((k, init) in order_and_initial(), n in 1usize..50) {
        let spec = spec_from(k, &init);
        let longer = generate(&spec, n + 1).unwrap();
        let shorter = generate(&spec, n).unwrap();
        prop_assert_eq!(&longer.terms()[..n], shorter.terms());
    }

    #[test]
    fn substitution_distributes_over_addition(p in poly(), q in poly(), v in variable(), r in affine()) {
        let lhs = (&p + &q).substitute(v, &r);
        let rhs = &p.substitute(v, &r) + &q.substitute(v, &r);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_distributes_over_multiplication(p in poly(), q in poly(), v in variable(), r in affine()) {
        let lhs = (&p * &q).substitute(v, &r);
        let rhs = &p.substitute(v, &r) * &q.substitute(v, &r);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        p in poly(),
        v in variable(),
        r in affine(),
        point in (-7i64..=7, -7i64..=7, -7i64..=7),
    ) {
        let (i, j, k) = point;
        let replaced_point = r.evaluate(i, j, k);
        // The replacement value stays in i64 range for these bounds.
        let replaced: i64 = replaced_point.try_into().unwrap();
        let (si, sj, sk) = match v {
            Var::I => (replaced, j, k),
            Var::J => (i, replaced, k),
            Var::K => (i, j, replaced),
        };
        prop_assert_eq!(p.substitute(v, &r).evaluate(i, j, k), p.evaluate(si, sj, sk));
    }

    #[test]
    fn bfile_round_trip(values in prop::collection::vec(any::<i64>(), 1..40)) {
        let text: String = values
            .iter()
            .enumerate()
            .map(|(n, v)| format!("{n} {v}\n"))
            .collect();
        let parsed = parse_bfile(&text).unwrap();
        prop_assert_eq!(parsed.entries().len(), values.len());
        for ((index, parsed_value), (n, v)) in parsed.entries().iter().zip(values.iter().enumerate()) {
            prop_assert_eq!(*index, n as i64);
            prop_assert_eq!(parsed_value, &BigInt::from(*v));
        }
    }
}
