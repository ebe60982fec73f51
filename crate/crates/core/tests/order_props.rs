use fockdec::combinatorics::{
    compare_dominance, compare_dominance_padded, enumerate_multipartitions, gamma_lex_cmp, multipartitions_unsorted,
};
use fockdec::{Dominance, Multicharge, Multipartition};
use proptest::prelude::*;

/// Two multipartitions of equal rank with a charge of matching level.
fn instance() -> impl Strategy<Value = (Multipartition, Multipartition, Multicharge)> {
    (1usize..=3, 0usize..=5)
        .prop_flat_map(|(l, n)| {
            let items = multipartitions_unsorted(l, n);
            let k = items.len();
            (Just(items), 0..k, 0..k, prop::collection::vec(-4i64..=4, l))
        })
        .prop_map(|(items, i, j, s)| (items[i].clone(), items[j].clone(), Multicharge::new(s).unwrap()))
}

proptest! {
    #[test]
    fn comparison_is_antisymmetric((a, b, s) in instance()) {
        let ab = compare_dominance(&a, &b, &s).unwrap();
        let ba = compare_dominance(&b, &a, &s).unwrap();
        let flipped = match ab {
            Dominance::Greater => Dominance::Less,
            Dominance::Less => Dominance::Greater,
            other => other,
        };
        prop_assert_eq!(ba, flipped);
        prop_assert_eq!(ab == Dominance::Equal, a == b);
    }

    #[test]
    fn padding_does_not_matter((a, b, s) in instance(), pad in 1usize..5) {
        prop_assert_eq!(
            compare_dominance(&a, &b, &s).unwrap(),
            compare_dominance_padded(&a, &b, &s, pad).unwrap()
        );
    }

    #[test]
    fn gamma_lex_extends_dominance((a, b, s) in instance()) {
        if compare_dominance(&a, &b, &s).unwrap() == Dominance::Greater {
            prop_assert!(gamma_lex_cmp(&a, &b, &s).is_gt());
        }
    }

    #[test]
    fn enumeration_is_sorted(l in 1usize..=3, n in 0usize..=4, s in prop::collection::vec(-3i64..=3, 3)) {
        let s = Multicharge::new(s[..l].to_vec()).unwrap();
        let items = enumerate_multipartitions(&s, n);
        prop_assert_eq!(items.len(), multipartitions_unsorted(l, n).len());
        for w in items.windows(2) {
            prop_assert!(gamma_lex_cmp(&w[0], &w[1], &s).is_gt());
        }
    }
}
