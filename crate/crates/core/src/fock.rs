//! The level-l Fock space with its `U'_v(sl_e^)` and `U_v(sl_inf)` actions.
//!
//! Vectors are sparse maps from l-partitions to Laurent polynomials. A
//! [`FockSpace`] fixes the multicharge and the modulus; for `e = infinity`
//! the operators `f_i, e_i, t_i` are the `F_j, E_j, T_j` indexed by contents.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{AddAssign, SubAssign};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    addable_nodes, node_cmp, removable_nodes, sort_desc, Modulus, Multicharge, Multipartition, Node,
};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    entries: BTreeMap<Multipartition, LaurentPoly>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(lambda: Multipartition) -> Self {
        let mut v = Self::zero();
        v.add_term(lambda, &LaurentPoly::one());
        v
    }

    pub fn empty_multipartition(level: usize) -> Self {
        Self::basis(Multipartition::empty(level))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coeff(&self, lambda: &Multipartition) -> LaurentPoly {
        self.entries.get(lambda).cloned().unwrap_or_default()
    }

    pub fn get(&self, lambda: &Multipartition) -> Option<&LaurentPoly> {
        self.entries.get(lambda)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Multipartition, &LaurentPoly)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Multipartition> {
        self.entries.keys()
    }

    pub fn add_term(&mut self, lambda: Multipartition, coeff: &LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.entries.entry(lambda) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (m, p) in &self.entries {
            out.add_term(m.clone(), &(p * c));
        }
        out
    }

    /// Coefficient-wise bar involution (not the Fock-space bar involution).
    pub fn bar_coefficients(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(m, p)| (m.clone(), p.bar())).collect(),
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&LaurentPoly) -> Result<LaurentPoly>) -> Result<Self> {
        let mut out = Self::zero();
        for (m, p) in &self.entries {
            out.add_term(m.clone(), &f(p)?);
        }
        Ok(out)
    }

    /// Entries sorted descending in the gamma-lex order for `charge`.
    pub fn sorted_entries(&self, charge: &Multicharge) -> Vec<(Multipartition, LaurentPoly)> {
        let mut keys: Vec<Multipartition> = self.entries.keys().cloned().collect();
        sort_desc(&mut keys, charge);
        keys.into_iter()
            .map(|k| {
                let c = self.entries[&k].clone();
                (k, c)
            })
            .collect()
    }

    pub fn to_json(&self, charge: &Multicharge) -> serde_json::Value {
        let items: Vec<FockEntry> = self
            .sorted_entries(charge)
            .into_iter()
            .map(|(multipartition, coeff)| FockEntry { multipartition, coeff })
            .collect();
        serde_json::to_value(items).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let items: Vec<FockEntry> = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Self::zero();
        for it in items {
            out.add_term(it.multipartition, &it.coeff);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct FockEntry {
    multipartition: Multipartition,
    coeff: LaurentPoly,
}

impl AddAssign<&FockVector> for FockVector {
    fn add_assign(&mut self, rhs: &FockVector) {
        for (m, p) in &rhs.entries {
            self.add_term(m.clone(), p);
        }
    }
}

impl SubAssign<&FockVector> for FockVector {
    fn sub_assign(&mut self, rhs: &FockVector) {
        for (m, p) in &rhs.entries {
            self.add_term(m.clone(), &-p);
        }
    }
}

impl FromIterator<(Multipartition, LaurentPoly)> for FockVector {
    fn from_iter<I: IntoIterator<Item = (Multipartition, LaurentPoly)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (m, p) in iter {
            out.add_term(m, &p);
        }
        out
    }
}

/// `N^>`, `N^<` for a pair `mu = lambda + node`, and `N(lambda)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeCounts {
    pub n_above: i64,
    pub n_below: i64,
    pub n_total: i64,
}

/// A Fock space `F^s_e`: multicharge plus modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockSpace {
    pub charge: Multicharge,
    pub modulus: Modulus,
}

impl FockSpace {
    pub fn new(charge: Multicharge, modulus: Modulus) -> Self {
        FockSpace { charge, modulus }
    }

    pub fn level(&self) -> usize {
        self.charge.level()
    }

    /// The same charge with `e = infinity`.
    pub fn infinite(&self) -> FockSpace {
        FockSpace::new(self.charge.clone(), Modulus::Infinite)
    }

    pub fn vacuum(&self) -> FockVector {
        FockVector::empty_multipartition(self.level())
    }

    fn check_color(&self, color: i64) {
        if let Modulus::Finite(e) = self.modulus {
            debug_assert!((0..i64::from(e)).contains(&color), "residue {color} out of range");
        }
    }

    pub fn node_color(&self, node: &Node) -> i64 {
        node.color(&self.charge, self.modulus)
    }

    pub fn addable(&self, lambda: &Multipartition, color: i64) -> Vec<Node> {
        addable_nodes(lambda, &self.charge, self.modulus, color)
    }

    pub fn removable(&self, lambda: &Multipartition, color: i64) -> Vec<Node> {
        removable_nodes(lambda, &self.charge, self.modulus, color)
    }

    /// `N_i(lambda)`: addable minus removable nodes of color `i`.
    pub fn n_total(&self, lambda: &Multipartition, color: i64) -> i64 {
        self.addable(lambda, color).len() as i64 - self.removable(lambda, color).len() as i64
    }

    /// Counts for `mu = lambda + node`: addable nodes of `lambda` minus
    /// removable nodes of `mu` of the same color lying strictly above
    /// (resp. below) `node` in `<_s`.
    pub fn count_n(&self, lambda: &Multipartition, mu: &Multipartition, node: &Node) -> Result<NodeCounts> {
        if lambda.with_node(node).as_ref() != Some(mu) {
            return Err(Error::InvalidPair {
                lambda: lambda.to_string(),
                mu: mu.to_string(),
                node: node.to_string(),
            });
        }
        let color = self.node_color(node);
        let add = self.addable(lambda, color);
        let rem = self.removable(mu, color);
        let count = |nodes: &[Node], ord: std::cmp::Ordering| {
            nodes.iter().filter(|g| node_cmp(g, node, &self.charge) == ord).count() as i64
        };
        use std::cmp::Ordering::{Greater, Less};
        Ok(NodeCounts {
            n_above: count(&add, Greater) - count(&rem, Greater),
            n_below: count(&add, Less) - count(&rem, Less),
            n_total: self.n_total(lambda, color),
        })
    }

    /// `f_i` on a basis vector.
    pub fn f_basis(&self, lambda: &Multipartition, color: i64) -> FockVector {
        self.check_color(color);
        let mut out = FockVector::zero();
        for node in self.addable(lambda, color) {
            let mu = lambda.with_node(&node).expect("addable");
            let n = self.count_n(lambda, &mu, &node).expect("valid pair").n_above;
            out.add_term(mu, &LaurentPoly::v_pow(n));
        }
        out
    }

    /// `e_i` on a basis vector.
    pub fn e_basis(&self, lambda: &Multipartition, color: i64) -> FockVector {
        self.check_color(color);
        let mut out = FockVector::zero();
        for node in self.removable(lambda, color) {
            let mu = lambda.without_node(&node).expect("removable");
            let n = self.count_n(&mu, lambda, &node).expect("valid pair").n_below;
            out.add_term(mu, &LaurentPoly::v_pow(-n));
        }
        out
    }

    fn linear(&self, x: &FockVector, op: impl Fn(&Multipartition) -> FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (lambda, c) in x.iter() {
            for (mu, d) in op(lambda).iter() {
                out.add_term(mu.clone(), &(c * d));
            }
        }
        out
    }

    pub fn apply_f(&self, x: &FockVector, color: i64) -> FockVector {
        self.linear(x, |lam| self.f_basis(lam, color))
    }

    pub fn apply_e(&self, x: &FockVector, color: i64) -> FockVector {
        self.linear(x, |lam| self.e_basis(lam, color))
    }

    pub fn apply_t(&self, x: &FockVector, color: i64) -> FockVector {
        self.linear(x, |lam| {
            FockVector::basis(lam.clone()).scale(&LaurentPoly::v_pow(self.n_total(lam, color)))
        })
    }

    pub fn apply_t_inv(&self, x: &FockVector, color: i64) -> FockVector {
        self.linear(x, |lam| {
            FockVector::basis(lam.clone()).scale(&LaurentPoly::v_pow(-self.n_total(lam, color)))
        })
    }

    /// The divided power `f_i^(u) = f_i^u / [u]!`.
    pub fn apply_f_divided(&self, x: &FockVector, color: i64, u: u32) -> Result<FockVector> {
        if u == 0 {
            return Ok(x.clone());
        }
        let mut y = x.clone();
        for _ in 0..u {
            y = self.apply_f(&y, color);
        }
        if u == 1 {
            return Ok(y);
        }
        let fact = LaurentPoly::qfactorial(u);
        y.map_coefficients(|p| p.exact_div(&fact))
    }

    /// Colors that can act nontrivially on some vector in `supp(x)`.
    pub fn active_colors(&self, x: &FockVector) -> Vec<i64> {
        let mut colors: Vec<i64> = x
            .support()
            .flat_map(|m| m.all_addable().into_iter().chain(m.all_removable()))
            .map(|n| self.node_color(&n))
            .collect();
        colors.sort_unstable();
        colors.dedup();
        colors
    }

    /// Checks `f_i`, `e_i`, `t_i` against their expressions through the
    /// `e = infinity` operators on `x`.
    pub fn check_compatibility(&self, x: &FockVector, residue: i64) -> bool {
        self.compatible_f(&self.apply_f(x, residue), x, residue)
            && self.compatible_e(&self.apply_e(x, residue), x, residue)
            && self.compatible_t(&self.apply_t(x, residue), x, residue)
    }

    fn content_window(&self, x: &FockVector) -> Option<(i64, i64)> {
        let inf = self.infinite();
        let contents = inf.active_colors(x);
        Some((*contents.first()?, *contents.last()?))
    }

    /// Contents `j = residue (mod e)` in `[lo, hi]`.
    fn lift(&self, residue: i64, lo: i64, hi: i64) -> Vec<i64> {
        let e = match self.modulus {
            Modulus::Finite(e) => i64::from(e),
            Modulus::Infinite => return (lo..=hi).filter(|&j| j == residue).collect(),
        };
        (lo..=hi).filter(|j| j.rem_euclid(e) == residue).collect()
    }

    fn step(&self) -> i64 {
        match self.modulus {
            Modulus::Finite(e) => i64::from(e),
            Modulus::Infinite => 1,
        }
    }

    /// `sum_j (prod_{r>=1} T_{j+re}) F_j x`, with the products truncated once
    /// `j + re` exceeds `hi + extra * e`.
    fn f_via_infinite(&self, x: &FockVector, residue: i64, extra: i64) -> FockVector {
        let inf = self.infinite();
        let e = self.step();
        let mut out = FockVector::zero();
        let Some((lo, hi)) = self.content_window(x) else {
            return out;
        };
        for j in self.lift(residue, lo - e, hi + e) {
            let mut y = inf.apply_f(x, j);
            if y.is_zero() {
                continue;
            }
            let top = inf.content_window(&y).map_or(hi, |(_, h)| h.max(hi)) + extra * e;
            let mut k = j + e;
            while k <= top {
                y = inf.apply_t(&y, k);
                k += e;
            }
            out += &y;
        }
        out
    }

    /// `sum_j (prod_{r>=1} T_{j-re}^{-1}) E_j x`.
    fn e_via_infinite(&self, x: &FockVector, residue: i64, extra: i64) -> FockVector {
        let inf = self.infinite();
        let e = self.step();
        let mut out = FockVector::zero();
        let Some((lo, hi)) = self.content_window(x) else {
            return out;
        };
        for j in self.lift(residue, lo - e, hi + e) {
            let mut y = inf.apply_e(x, j);
            if y.is_zero() {
                continue;
            }
            let bottom = inf.content_window(&y).map_or(lo, |(l, _)| l.min(lo)) - extra * e;
            let mut k = j - e;
            while k >= bottom {
                y = inf.apply_t_inv(&y, k);
                k -= e;
            }
            out += &y;
        }
        out
    }

    /// `prod_{j = residue mod e} T_j x`.
    fn t_via_infinite(&self, x: &FockVector, residue: i64, extra: i64) -> FockVector {
        let inf = self.infinite();
        let e = self.step();
        let Some((lo, hi)) = self.content_window(x) else {
            return x.clone();
        };
        let mut y = x.clone();
        for j in self.lift(residue, lo - (1 + extra) * e, hi + (1 + extra) * e) {
            y = inf.apply_t(&y, j);
        }
        y
    }

    /// Whether `claimed` equals `f_i x` as computed through the `e = infinity`
    /// operators. The truncation is validated by enlarging it once.
    pub fn compatible_f(&self, claimed: &FockVector, x: &FockVector, residue: i64) -> bool {
        let a = self.f_via_infinite(x, residue, 0);
        a == self.f_via_infinite(x, residue, 1) && &a == claimed
    }

    pub fn compatible_e(&self, claimed: &FockVector, x: &FockVector, residue: i64) -> bool {
        let a = self.e_via_infinite(x, residue, 0);
        a == self.e_via_infinite(x, residue, 1) && &a == claimed
    }

    pub fn compatible_t(&self, claimed: &FockVector, x: &FockVector, residue: i64) -> bool {
        let a = self.t_via_infinite(x, residue, 0);
        a == self.t_via_infinite(x, residue, 1) && &a == claimed
    }

    /// Checks `(e_i f_i - f_i e_i) x = (t_i - t_i^-1)/(v - v^-1) x`.
    pub fn check_sl2_relation(&self, x: &FockVector, color: i64) -> Result<bool> {
        let mut lhs = self.apply_e(&self.apply_f(x, color), color);
        lhs -= &self.apply_f(&self.apply_e(x, color), color);
        let mut rhs = self.apply_t(x, color);
        rhs -= &self.apply_t_inv(x, color);
        let denom = LaurentPoly::from_terms([(1, 1), (-1, -1)]);
        let rhs = rhs.map_coefficients(|p| p.exact_div(&denom))?;
        Ok(lhs == rhs)
    }
}
