//! Property suites over random inputs: series ring laws to the computed
//! truncations and number-field arithmetic laws.

use proptest::prelude::*;
use qblocks_core::field::{FieldElement, NumberField};
use qblocks_core::series::{HalfLaurentSeries, Trunc};
use rug::Rational;

fn arb_field() -> impl Strategy<Value = NumberField> {
    prop_oneof![
        Just(NumberField::Rational),
        Just(NumberField::SqrtM3),
        Just(NumberField::XiCubic),
    ]
}

fn arb_element(field: NumberField) -> impl Strategy<Value = FieldElement> {
    proptest::collection::vec((-40i64..40, 1i64..12), field.degree()).prop_map(move |v| {
        let coeffs: Vec<Rational> = v.into_iter().map(Rational::from).collect();
        FieldElement::from_coeffs(field, &coeffs).unwrap()
    })
}

fn arb_series(field: NumberField) -> impl Strategy<Value = HalfLaurentSeries> {
    proptest::collection::vec(((-6i64..22), (-9i64..9)), 0..10).prop_map(move |terms| {
        let mut s = HalfLaurentSeries::zero(field, Trunc::Order(20));
        for (e, c) in terms {
            if e <= 20 {
                s.add_to_coeff(e, &FieldElement::from_i64(field, c));
            }
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distributivity_to_truncation(
        f in arb_field(),
        seed in proptest::collection::vec(((-6i64..22), (-9i64..9)), 3..24),
    ) {
        // split the seed into three series over the same field
        let mk = |chunk: &[(i64, i64)]| {
            let mut s = HalfLaurentSeries::zero(f, Trunc::Order(20));
            for &(e, c) in chunk {
                s.add_to_coeff(e, &FieldElement::from_i64(f, c));
            }
            s
        };
        let third = seed.len() / 3;
        let a = mk(&seed[..third]);
        let b = mk(&seed[third..2 * third]);
        let c = mk(&seed[2 * third..]);
        let lhs = a.add(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn field_mul_associative_commutative(
        (a, b, c) in arb_field().prop_flat_map(|f| (arb_element(f), arb_element(f), arb_element(f))),
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn field_inverse(a in arb_field().prop_flat_map(arb_element)) {
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert_eq!(&a * &inv, FieldElement::one(a.field));
        }
    }

    #[test]
    fn series_mul_truncation_never_lies(
        f in arb_field(),
        seed in proptest::collection::vec(((-6i64..22), (-9i64..9)), 2..20),
    ) {
        // the product of truncated views agrees with the truncated product
        let mut full = HalfLaurentSeries::zero(f, Trunc::Order(40));
        for &(e, c) in &seed {
            full.add_to_coeff(e, &FieldElement::from_i64(f, c));
        }
        let half = full.truncate_to(Trunc::Order(20));
        let p_full = full.mul(&full).unwrap();
        let p_half = half.mul(&half).unwrap();
        // every coefficient the truncated product claims must match the
        // wide product
        if let Trunc::Order(t) = p_half.trunc() {
            for e in p_half.min_degree().unwrap_or(0)..=t {
                prop_assert_eq!(p_half.coeff(e).unwrap(), p_full.coeff(e).unwrap());
            }
        }
    }
}
