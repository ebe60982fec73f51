use fockdec::LaurentPoly;
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..6).prop_map(LaurentPoly::from_terms)
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(&a * &LaurentPoly::one(), a);
    }

    #[test]
    fn bar_is_a_ring_involution(a in poly(), b in poly()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        prop_assert_eq!(a.bar().eval_at_one(), a.eval_at_one());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn bar_symmetric_part_splits(c in poly()) {
        let m = c.bar_symmetric_part();
        prop_assert!(m.is_bar_invariant());
        prop_assert!((&c - &m).in_v_z_v());
    }

    #[test]
    fn cell_and_json_round_trip(a in poly()) {
        prop_assert_eq!(LaurentPoly::parse_cell(&a.to_cell()).unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), a);
    }

    #[test]
    fn quantum_integers(n in 1i64..12) {
        let q = LaurentPoly::qint(n).unwrap();
        prop_assert!(q.is_bar_invariant());
        prop_assert_eq!(q.eval_at_one(), BigInt::from(n));
        let v = LaurentPoly::v_pow(1);
        let vinv = LaurentPoly::v_pow(-1);
        prop_assert_eq!(&q * &(&v - &vinv), &LaurentPoly::v_pow(n) - &LaurentPoly::v_pow(-n));
    }
}
