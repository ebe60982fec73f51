mod common;

use common::*;
use fockdec::canonical::canonical_basis_any_charge;
use fockdec::factorize::{back_substitution_oracle, factorize};
use fockdec::{FockSpace, Modulus};

fn brute_force_agrees(e: Modulus, s: &str, n: usize) {
    let charge = charge(s);
    let set = canonical_basis_any_charge(e, &charge, n).unwrap();
    let space = FockSpace::new(charge, e);
    assert_eq!(
        rank_at_three(&word_monomials(&space, n)),
        set.len(),
        "dimension e={e} s={s} n={n}"
    );
    for g in &set.elements {
        let expected = brute_force_canonical(&space, n, &g.label, 6)
            .unwrap_or_else(|| panic!("no solution for {} (e={e} s={s} n={n})", g.label));
        assert_eq!(to_rat(&g.vector), expected, "G({}) e={e} s={s} n={n}", g.label);
    }
}

#[test]
fn canonical_basis_matches_brute_force() {
    for s in CHARGES {
        for e in [
            Modulus::Finite(2),
            Modulus::Finite(3),
            Modulus::Finite(4),
            Modulus::Infinite,
        ] {
            for n in 0..=3 {
                brute_force_agrees(e, s, n);
            }
        }
    }
}

#[test]
fn extraction_matches_back_substitution() {
    for (e, s, n) in sweep(5) {
        let f = factorize(e, &s, n).unwrap();
        let x = back_substitution_oracle(&f.d_e, &f.d_inf).unwrap();
        assert_eq!(x, f.d_rel, "e={e} s={s:?} n={n}");
    }
}

#[test]
fn level_three_matches_brute_force() {
    for (s, e, n) in [("0,0,1", 2, 4), ("0,2,3", 2, 4), ("0,0,1", 3, 4), ("0,0,0", 2, 4)] {
        brute_force_agrees(Modulus::Finite(e), s, n);
    }
}

#[test]
fn level_three_structure() {
    for s in ["0,0,1", "0,1,2", "0,0,2"] {
        for e in [2, 3, 4] {
            for n in 0..=6 {
                let f = factorize(Modulus::Finite(e), &charge(s), n).unwrap();
                let report = f.verify();
                assert!(
                    report.all_pass(),
                    "e={e} s={s} n={n}: {:?}",
                    report.failures().collect::<Vec<_>>()
                );
            }
        }
    }
}
