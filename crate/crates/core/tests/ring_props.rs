//! Ring laws and structural invariants on random sparse samples.

use mircan_core::ring::coeff::rat;
use mircan_core::ring::poly::{GenTable, GradedPoly};
use mircan_core::ring::qseries::QSeries;
use mircan_core::ring::serialize;
use num::{BigRational, Zero};
use proptest::prelude::*;
use std::sync::Arc;

fn table() -> Arc<GenTable> {
    GenTable::new(vec![
        ("ps_x2".into(), 4),
        ("ps_y4".into(), 8),
        ("c".into(), 2),
    ])
}

const BOUND: u32 = 16;

fn arb_poly() -> impl Strategy<Value = GradedPoly<BigRational>> {
    let term = (0u16..4, 0u16..3, 0u16..6, -9i64..10, 1i64..7);
    proptest::collection::vec(term, 0..8).prop_map(|terms| {
        GradedPoly::from_terms(
            table(),
            BOUND,
            BigRational::zero(),
            terms
                .into_iter()
                .map(|(a, b, c, num, den)| (vec![a, b, c], rat(num, den))),
        )
    })
}

fn arb_qseries() -> impl Strategy<Value = QSeries<BigRational>> {
    proptest::collection::vec((0u32..24, -9i64..10, 1i64..7), 0..8).prop_map(|terms| {
        let mut s = QSeries::zero(24, BigRational::zero());
        for (e, num, den) in terms {
            s.accumulate(e, rat(num, den));
        }
        s
    })
}

proptest! {
    #[test]
    fn poly_mul_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn poly_mul_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn poly_mul_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn truncation_coherence(a in arb_poly(), b in arb_poly(), w in 0u32..BOUND) {
        // truncating the full product agrees with multiplying the truncations
        // at the smaller bound
        let full = a.mul(&b).truncate(w);
        let small = a.truncate(w).mul(&b.truncate(w));
        prop_assert_eq!(full, small);
    }

    #[test]
    fn exp_log_inverse_pair(a in arb_poly()) {
        // strip the constant term so exp applies
        let a0 = a.constant_term();
        let x = a.sub(&GradedPoly::constant(table(), BOUND, a0));
        let exp = x.series_exp().unwrap();
        prop_assert_eq!(exp.series_log().unwrap(), x);
    }

    #[test]
    fn inv_is_right_inverse(a in arb_poly()) {
        let one = GradedPoly::one(table(), BOUND, &BigRational::zero());
        let unit = a.add(&one); // ensure nonzero constant term in most cases
        if let Ok(inv) = unit.series_inv() {
            prop_assert_eq!(unit.mul(&inv), one);
        }
    }

    #[test]
    fn poly_serialization_roundtrip_is_byte_identity(a in arb_poly()) {
        let text = serialize::poly_to_text(&a);
        let parsed = serialize::poly_from_text(&text, &table(), BOUND).unwrap();
        prop_assert_eq!(&parsed, &a);
        prop_assert_eq!(serialize::poly_to_text(&parsed), text);
    }

    #[test]
    fn qseries_mul_commutes(a in arb_qseries(), b in arb_qseries()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn qseries_mul_associates(a in arb_qseries(), b in arb_qseries(), c in arb_qseries()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn qseries_truncation_coherence(a in arb_qseries(), b in arb_qseries(), w in 0u32..24) {
        prop_assert_eq!(a.mul(&b).truncate(w), a.truncate(w).mul(&b.truncate(w)));
    }

    #[test]
    fn qseries_serialization_roundtrip(a in arb_qseries()) {
        let text = serialize::qseries_to_text(&a);
        let parsed = serialize::qseries_from_text(&text, 24).unwrap();
        prop_assert_eq!(&parsed, &a);
        prop_assert_eq!(serialize::qseries_to_text(&parsed), text);
    }

    #[test]
    fn qseries_inv_is_inverse(a in arb_qseries()) {
        let one = QSeries::one(24, &BigRational::zero());
        let unit = a.add(&one);
        if let Ok(inv) = unit.inv() {
            prop_assert_eq!(unit.mul(&inv), one);
        }
    }
}
