#![allow(dead_code)]

//! Shared fixtures and an independent brute-force canonical basis solver.

use std::collections::BTreeMap;

use fockdec::combinatorics::enumerate_multipartitions;
use fockdec::crystal::color_alphabet;
use fockdec::{FockSpace, FockVector, LaurentPoly, Modulus, Multicharge, Multipartition};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub const CHARGES: [&str; 4] = ["0", "0,0", "0,1", "1,3"];
pub const FINITE_E: [u32; 3] = [2, 3, 4];

pub fn mp(s: &str) -> Multipartition {
    s.parse().unwrap()
}

pub fn charge(s: &str) -> Multicharge {
    s.parse().unwrap()
}

/// Every `(e, s, n)` of the factorization sweep.
pub fn sweep(max_n: usize) -> Vec<(Modulus, Multicharge, usize)> {
    let mut out = Vec::new();
    for s in CHARGES {
        for e in FINITE_E {
            for n in 0..=max_n {
                out.push((Modulus::Finite(e), charge(s), n));
            }
        }
    }
    out
}

pub fn golden_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Distinct nonzero vectors `f_{i_t}^(u_t) ... f_{i_1}^(u_1) |empty>` over
/// all color sequences with `u_1 + ... + u_t = n`; these span the integral form.
pub fn word_monomials(space: &FockSpace, n: usize) -> Vec<FockVector> {
    let colors = color_alphabet(space, n);
    // layers[k]: vectors of rank k
    let mut layers: Vec<Vec<FockVector>> = vec![vec![space.vacuum()]];
    for k in 1..=n {
        let mut next: Vec<FockVector> = Vec::new();
        for u in 1..=k {
            for x in &layers[k - u] {
                for &i in &colors {
                    let y = space.apply_f_divided(x, i, u as u32).expect("divided power");
                    if !y.is_zero() && !next.contains(&y) {
                        next.push(y);
                    }
                }
            }
        }
        layers.push(next);
    }
    layers.pop().unwrap_or_default()
}

fn eval(p: &LaurentPoly, v: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for (k, c) in p.terms() {
        acc += BigRational::from_integer(c.clone()) * pow(v, k);
    }
    acc
}

fn pow(v: &BigRational, k: i64) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        r *= v;
    }
    if k < 0 {
        r.recip()
    } else {
        r
    }
}

/// Row-reduces `[a | b]` in place; returns the pivot columns, or `None` if
/// the system is inconsistent.
fn row_reduce(a: &mut [Vec<BigRational>], b: &mut [BigRational]) -> Option<Vec<usize>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        b[r] *= &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= p * &f;
                }
                let t = &b[r] * &f;
                b[i] -= t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(pivots)
}

/// Dimension of the span of `vectors` after specializing `v = 3`.
pub fn rank_at_three(vectors: &[FockVector]) -> usize {
    let v = BigRational::from_integer(BigInt::from(3));
    let support: Vec<Multipartition> = {
        let mut s: Vec<Multipartition> = vectors.iter().flat_map(|x| x.support().cloned()).collect();
        s.sort();
        s.dedup();
        s
    };
    let mut a: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|x| support.iter().map(|m| eval(&x.coeff(m), &v)).collect())
        .collect();
    let mut b = vec![BigRational::zero(); a.len()];
    row_reduce(&mut a, &mut b).map_or(0, |p| p.len())
}

/// Rational Laurent polynomial as exponent -> coefficient.
pub type RatPoly = BTreeMap<i64, BigRational>;

/// Solves for the bar-invariant vector `sum_w c_w M_w` whose coefficient at
/// `label` lies in `1 + vQ[v]` and whose other coefficients lie in `vQ[v]`,
/// with each `c_w` bar-symmetric of degree at most `max_degree`.
pub fn brute_force_canonical(
    space: &FockSpace,
    n: usize,
    label: &Multipartition,
    max_degree: i64,
) -> Option<BTreeMap<Multipartition, RatPoly>> {
    let words = word_monomials(space, n);
    let rows_mp = enumerate_multipartitions(&space.charge, n);
    for degree in 0..=max_degree {
        // Unknown (w, j) multiplies v^j + v^-j (just 1 for j = 0).
        let unknowns: Vec<(usize, i64)> = (0..words.len())
            .flat_map(|w| (0..=degree).map(move |j| (w, j)))
            .collect();
        let mut contrib: BTreeMap<(usize, i64), Vec<BigRational>> = BTreeMap::new();
        for (u, &(w, j)) in unknowns.iter().enumerate() {
            for (mi, m) in rows_mp.iter().enumerate() {
                let p = words[w].coeff(m);
                for (k, c) in p.terms() {
                    let shifts: &[i64] = if j == 0 { &[0] } else { &[j, -j] };
                    for &s in shifts {
                        let slot = contrib
                            .entry((mi, k + s))
                            .or_insert_with(|| vec![BigRational::zero(); unknowns.len()]);
                        slot[u] += BigRational::from_integer(c.clone());
                    }
                }
            }
        }
        let label_row = rows_mp.iter().position(|m| m == label)?;
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut has_label_const = false;
        for (&(mi, k), row) in &contrib {
            if k > 0 {
                continue;
            }
            let target = if mi == label_row && k == 0 {
                has_label_const = true;
                BigRational::one()
            } else {
                BigRational::zero()
            };
            a.push(row.clone());
            b.push(target);
        }
        if !has_label_const {
            continue;
        }
        let mut a2 = a.clone();
        let mut b2 = b.clone();
        let Some(pivots) = row_reduce(&mut a2, &mut b2) else {
            continue;
        };
        let mut x = vec![BigRational::zero(); unknowns.len()];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = b2[r].clone();
        }
        let mut out: BTreeMap<Multipartition, RatPoly> = BTreeMap::new();
        for (&(mi, k), row) in &contrib {
            let val: BigRational = row.iter().zip(&x).map(|(p, q)| p * q).sum();
            if !val.is_zero() {
                out.entry(rows_mp[mi].clone()).or_default().insert(k, val);
            }
        }
        return Some(out);
    }
    None
}

pub fn to_rat(x: &FockVector) -> BTreeMap<Multipartition, RatPoly> {
    x.iter()
        .map(|(m, p)| {
            let poly = p
                .terms()
                .map(|(k, c)| (k, BigRational::from_integer(c.clone())))
                .collect();
            (m.clone(), poly)
        })
        .collect()
}
