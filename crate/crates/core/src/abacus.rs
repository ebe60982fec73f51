//! Abacus combinatorics: beta-numbers, the bijection `tau_l` between 1-runner
//! and l-runner abaci, the reading word and the sequences derived from it.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Multicharge, Multipartition};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbacusData {
    pub e: u32,
    pub l: usize,
    pub k: Vec<i64>,
    pub w: Vec<i64>,
    pub c: Vec<i64>,
    pub d: Vec<i64>,
    pub m: Vec<i64>,
    pub phi: Vec<i64>,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub zeta: Vec<i64>,
}

/// `k = c + e(d-1) + e*l*m` with `c` in `[1,e]`, `d` in `[1,l]`.
pub fn decompose(k: i64, e: u32, l: usize) -> (i64, i64, i64) {
    let e = i64::from(e);
    let l = l as i64;
    let (m, rest) = (k - 1).div_mod_floor(&(e * l));
    let (dd, cc) = rest.div_mod_floor(&e);
    (cc + 1, dd + 1, m)
}

/// Bead of `k` on the l-runner abacus: `(phi, d)`.
pub fn tau(k: i64, e: u32, l: usize) -> (i64, i64) {
    let (c, d, m) = decompose(k, e, l);
    (c + i64::from(e) * m, d)
}

/// Inverse of [`tau`].
pub fn tau_point_inverse(phi: i64, d: i64, e: u32, l: usize) -> i64 {
    let e = i64::from(e);
    let (m, c0) = (phi - 1).div_mod_floor(&e);
    c0 + 1 + e * (d - 1) + e * l as i64 * m
}

/// Beta-numbers `lambda_i + s + 1 - i` for `i = 1..=r`.
pub fn beta_numbers(parts: &[u32], s: i64, r: usize) -> Vec<i64> {
    (1..=r)
        .map(|i| i64::from(parts.get(i - 1).copied().unwrap_or(0)) + s + 1 - i as i64)
        .collect()
}

/// The level-1 pair `(lambda, s)` with `tau_l(lambda, s) = (lambda_bold, s_bold)`.
pub fn level_one_preimage(lambda: &Multipartition, charge: &Multicharge, e: u32) -> Result<(Vec<u32>, i64)> {
    let l = charge.level();
    if lambda.level() != l {
        return Err(Error::LevelMismatch {
            expected: l,
            found: lambda.level(),
        });
    }
    if e < 1 {
        return Err(Error::InvalidArgument("e must be positive".into()));
    }
    let s: i64 = charge.as_slice().iter().sum();
    // Below phi = floor every runner is full, so the 1-runner abacus is full
    // below the matching k.
    let lowest = (0..l)
        .map(|d| charge.as_slice()[d] - lambda.components()[d].len() as i64)
        .min()
        .unwrap_or(0);
    let ee = i64::from(e);
    let m0 = Integer::div_floor(&lowest, &ee);
    let floor_phi = ee * m0;
    let mut beads = BTreeSet::new();
    for (d, parts) in lambda.components().iter().enumerate() {
        let sd = charge.as_slice()[d];
        let mut i = 1i64;
        loop {
            let p = i64::from(parts.get(i as usize - 1).copied().unwrap_or(0));
            let phi = p + sd + 1 - i;
            if phi <= floor_phi {
                break;
            }
            beads.insert(tau_point_inverse(phi, d as i64 + 1, e, l));
            i += 1;
        }
    }
    let k_floor = ee * l as i64 * m0;
    let mut parts = Vec::new();
    for (i, &k) in beads.iter().rev().enumerate() {
        let p = k - s - 1 + (i as i64 + 1);
        if p > 0 {
            parts.push(p as u32);
        }
    }
    debug_assert!(beads.iter().all(|&k| k > k_floor));
    debug_assert_eq!(beads.len() as i64, s - k_floor);
    Ok((parts, s))
}

/// The first `r` beta-numbers of `tau_l^{-1}(lambda, s)`; `r` must leave the
/// `r`-th part of the level-1 partition zero.
pub fn tau_inverse(lambda: &Multipartition, charge: &Multicharge, e: u32, r: usize) -> Result<Vec<i64>> {
    let (parts, s) = level_one_preimage(lambda, charge, e)?;
    if r <= parts.len() {
        return Err(Error::RTooSmall {
            r,
            suggested: parts.len() + 1,
        });
    }
    Ok(beta_numbers(&parts, s, r))
}

/// Decodes a strictly decreasing `k` (continued by `k_r - 1, k_r - 2, ...`)
/// into an l-partition and multicharge.
pub fn tau_forward(k: &[i64], e: u32, l: usize) -> Result<(Multipartition, Multicharge)> {
    if k.windows(2).any(|p| p[0] <= p[1]) {
        return Err(Error::InvalidArgument("k must be strictly decreasing".into()));
    }
    if l == 0 || e == 0 {
        return Err(Error::InvalidArgument("e and l must be positive".into()));
    }
    let ee = i64::from(e);
    let el = ee * l as i64;
    let tail = k.last().copied().unwrap_or(1);
    // Everything at or below k_floor is occupied; that is phi <= e*m0 on each runner.
    let m0 = Integer::div_floor(&(tail - 1), &el);
    let k_floor = el * m0;
    let floor_phi = ee * m0;
    let mut runners: Vec<Vec<i64>> = vec![Vec::new(); l];
    for x in k.iter().copied().filter(|&x| x > k_floor) {
        let (phi, d) = tau(x, e, l);
        runners[d as usize - 1].push(phi);
    }
    let mut extra = tail - 1;
    while extra > k_floor {
        let (phi, d) = tau(extra, e, l);
        runners[d as usize - 1].push(phi);
        extra -= 1;
    }
    let mut components = Vec::with_capacity(l);
    let mut charge = Vec::with_capacity(l);
    for mut beads in runners {
        beads.sort_unstable_by(|a, b| b.cmp(a));
        let sd = floor_phi + beads.len() as i64;
        let parts: Vec<u32> = beads
            .iter()
            .enumerate()
            .map(|(i, &b)| b - sd + i as i64)
            .filter(|&p| p > 0)
            .map(|p| p as u32)
            .collect();
        components.push(parts);
        charge.push(sd);
    }
    Ok((Multipartition::new(components)?, Multicharge::new(charge)?))
}

/// Reading word and the derived sequences for a finite `k`.
pub fn reading_word(k: &[i64], e: u32, l: usize) -> AbacusData {
    let ee = i64::from(e);
    let mut c = Vec::with_capacity(k.len());
    let mut d = Vec::with_capacity(k.len());
    let mut m = Vec::with_capacity(k.len());
    let mut phi = Vec::with_capacity(k.len());
    for &x in k {
        let (ci, di, mi) = decompose(x, e, l);
        c.push(ci);
        d.push(di);
        m.push(mi);
        phi.push(ci + ee * mi);
    }
    // Right to left, starting with the l-th runner.
    let mut order: Vec<usize> = (0..k.len()).collect();
    order.sort_by(|&i, &j| d[j].cmp(&d[i]).then(phi[j].cmp(&phi[i])));
    let w: Vec<i64> = order.iter().map(|&i| k[i]).collect();
    let zeta: Vec<i64> = order.iter().map(|&i| phi[i]).collect();
    let b: Vec<i64> = order.iter().map(|&i| d[i]).collect();
    let mut a = c.clone();
    a.sort_unstable();
    AbacusData {
        e,
        l,
        k: k.to_vec(),
        w,
        c,
        d,
        m,
        phi,
        a,
        b,
        zeta,
    }
}

/// Full pipeline: `tau_inverse` followed by `reading_word`.
pub fn abacus_data(lambda: &Multipartition, charge: &Multicharge, e: u32, r: usize) -> Result<AbacusData> {
    let k = tau_inverse(lambda, charge, e, r)?;
    Ok(reading_word(&k, e, charge.level()))
}

/// Smallest `r` for which `zeta` and `b` agree for `e` and `e_prime`: the
/// level-1 parts vanish from `r` on for both, and `k_r` sits at the first
/// label of a cell of width `e` and of width `e_prime`.
pub fn stable_r(lambda: &Multipartition, charge: &Multicharge, e: u32, e_prime: u32) -> Result<usize> {
    if e < 2 || e_prime < 2 {
        return Err(Error::InvalidArgument("e and e' must be at least 2".into()));
    }
    let (p1, s) = level_one_preimage(lambda, charge, e)?;
    let (p2, _) = level_one_preimage(lambda, charge, e_prime)?;
    let l = charge.level() as i64;
    let period = l * i64::from(e).lcm(&i64::from(e_prime));
    let min_r = p1.len().max(p2.len()) as i64 + 1;
    // Far out both sequences read k_r = s + 1 - r, so 1 - k_r = r - s.
    let r = min_r + (s - min_r).rem_euclid(period);
    Ok(r as usize)
}

/// Rows of `o`/`.` per runner (runner 1 on top) over the columns spanned by
/// the beads of `data`, with column labels.
pub fn render_abacus(data: &AbacusData) -> String {
    let mut out = String::new();
    if data.k.is_empty() {
        return out;
    }
    let lo = *data.phi.iter().min().expect("nonempty");
    let hi = *data.phi.iter().max().expect("nonempty");
    let width = (lo..=hi).map(|x| x.to_string().len()).max().unwrap_or(1);
    let _ = write!(out, "{:>4}", "");
    for x in lo..=hi {
        let _ = write!(out, " {x:>width$}");
    }
    out.push('\n');
    for d in 1..=data.l as i64 {
        let _ = write!(out, "{:>4}", format!("{d}:"));
        for x in lo..=hi {
            let bead = data.phi.iter().zip(&data.d).any(|(&p, &dd)| p == x && dd == d);
            let _ = write!(out, " {:>width$}", if bead { "o" } else { "." });
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> (Multipartition, Multicharge) {
        ("1.1|1.1|1".parse().unwrap(), "0,0,-1".parse().unwrap())
    }

    #[test]
    fn worked_instance() {
        let (lam, s) = worked();
        assert_eq!(level_one_preimage(&lam, &s, 2).unwrap(), (vec![4, 3, 3, 2, 1], -1));
        let data = abacus_data(&lam, &s, 2, 7).unwrap();
        assert_eq!(data.k, vec![3, 1, 0, -2, -4, -6, -7]);
        assert_eq!(data.w, vec![0, -6, -7, 3, -2, 1, -4]);
        assert_eq!(data.c, vec![1, 1, 2, 2, 2, 2, 1]);
        assert_eq!(data.d, vec![2, 1, 3, 2, 1, 3, 3]);
        assert_eq!(data.m, vec![0, 0, -1, -1, -1, -2, -2]);
        assert_eq!(data.phi, vec![1, 1, 0, 0, 0, -2, -3]);
        assert_eq!(data.a, vec![1, 1, 1, 2, 2, 2, 2]);
        assert_eq!(data.b, vec![3, 3, 3, 2, 2, 1, 1]);
        assert_eq!(data.zeta, vec![0, -2, -3, 1, 0, 1, 0]);
        assert_eq!(tau_forward(&data.k, 2, 3).unwrap(), (lam, s));
    }

    #[test]
    fn r_too_small() {
        let (lam, s) = worked();
        assert_eq!(
            tau_inverse(&lam, &s, 2, 5),
            Err(Error::RTooSmall { r: 5, suggested: 6 })
        );
        assert!(tau_inverse(&lam, &s, 2, 6).is_ok());
    }

    #[test]
    fn stabilization() {
        let (lam, s) = worked();
        let r = stable_r(&lam, &s, 2, 3).unwrap();
        let k2 = tau_inverse(&lam, &s, 2, r).unwrap();
        let k3 = tau_inverse(&lam, &s, 3, r).unwrap();
        assert_eq!(*k2.last().unwrap(), -17);
        assert_eq!(*k3.last().unwrap(), -17);
        let (d2, d3) = (reading_word(&k2, 2, 3), reading_word(&k3, 3, 3));
        assert_eq!(d2.b, d3.b);
        assert_eq!(d2.zeta, d3.zeta);
    }

    #[test]
    fn level_one_is_identity() {
        let lam: Multipartition = "3.1".parse().unwrap();
        let s: Multicharge = "2".parse().unwrap();
        let data = abacus_data(&lam, &s, 3, 4).unwrap();
        assert_eq!(data.k, vec![5, 2, 0, -1]);
        assert_eq!(data.w, data.k);
        assert_eq!(data.zeta, data.phi);
        assert!(data.b.iter().all(|&b| b == 1));
        assert_eq!(tau_forward(&data.k, 3, 1).unwrap(), (lam, s));
    }

    #[test]
    fn empty_sequences() {
        let data = reading_word(&[], 2, 3);
        assert!(data.w.is_empty() && data.zeta.is_empty() && data.a.is_empty());
        assert_eq!(render_abacus(&data), "");
        let (lam, s) = tau_forward(&[0, -1], 2, 1).unwrap();
        assert_eq!(lam.to_string(), "-");
        assert_eq!(s.as_slice(), &[0]);
    }

    #[test]
    fn decomposition_reconstructs() {
        for k in -40..40 {
            for (e, l) in [(2, 3), (3, 2), (4, 1)] {
                let (c, d, m) = decompose(k, e, l);
                assert!((1..=i64::from(e)).contains(&c) && (1..=l as i64).contains(&d));
                assert_eq!(c + i64::from(e) * (d - 1) + i64::from(e) * l as i64 * m, k);
                let (phi, d2) = tau(k, e, l);
                assert_eq!(tau_point_inverse(phi, d2, e, l), k);
            }
        }
    }

    #[test]
    fn render() {
        let (lam, s) = worked();
        let text = render_abacus(&abacus_data(&lam, &s, 2, 7).unwrap());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].contains("-3") && lines[0].contains('1'));
        assert!(lines[3].starts_with("  3:"));
    }
}
