//! Exact Laurent polynomials in `v` over the integers.
//!
//! Coefficients are arbitrary precision. Zero coefficients are never stored,
//! so the derived equality is equality of polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * v^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterates `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// The ring involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// True when every exponent is at least 1, i.e. `p` lies in `v Z[v]`.
    pub fn in_v_z_v(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 1)
    }

    /// True when `p` lies in `Z[v]`.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Value at `v = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The balanced quantum integer `[n] = v^(n-1) + v^(n-3) + ... + v^(1-n)`.
    pub fn qint(n: i64) -> Result<Self> {
        if n <= 0 {
            return Err(Error::NonPositiveQuantumInteger(n));
        }
        Ok(Self::from_terms((0..n).map(|k| (n - 1 - 2 * k, 1))))
    }

    /// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
    pub fn qfactorial(n: u32) -> Self {
        (1..=i64::from(n)).fold(Self::one(), |acc, k| &acc * &Self::qint(k).expect("k >= 1"))
    }

    /// Returns `r` with `r * divisor == self`, or `DivisionNotExact`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<Self> {
        let (dlo, dhi) = match (divisor.min_exp(), divisor.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::DivisionByZero),
        };
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rhi) = rem.max_exp() {
            let rlo = rem.min_exp().expect("nonzero");
            // The remainder's span must stay at least as wide as the divisor's.
            if rhi - rlo < dhi - dlo {
                return Err(Error::DivisionNotExact {
                    dividend: self.to_string(),
                    divisor: divisor.to_string(),
                });
            }
            let (q, r) = rem.coeff(rhi).div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::DivisionNotExact {
                    dividend: self.to_string(),
                    divisor: divisor.to_string(),
                });
            }
            let step = Self::monomial(q, rhi - dhi);
            rem -= &(&step * divisor);
            quot += &step;
        }
        Ok(quot)
    }

    /// `a_0 + sum_{k>0} a_{-k} (v^k + v^-k)`: the bar-invariant part agreeing
    /// with `p` in every exponent `<= 0`.
    pub fn bar_symmetric_part(&self) -> Self {
        let mut out = Self::zero();
        for (&e, c) in self.terms.range(..=0) {
            out.add_term(e, c.clone());
            if e < 0 {
                out.add_term(-e, c.clone());
            }
        }
        out
    }

    /// Sorted `[exponent, coefficient]` pairs, ascending in exponent.
    pub fn to_pairs(&self) -> Vec<(i64, BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c.clone())).collect()
    }

    /// Matrix-cell form: `c*v^k` terms joined by `+` in ascending exponent,
    /// `.` for zero.
    pub fn to_cell(&self) -> String {
        if self.is_zero() {
            return ".".to_string();
        }
        self.terms
            .iter()
            .map(|(e, c)| format!("{c}*v^{e}"))
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn parse_cell(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "." {
            return Ok(Self::zero());
        }
        let bad = || Error::Parse(format!("bad polynomial cell {s:?}"));
        let mut p = Self::zero();
        // Negative coefficients appear as `+-c*v^k`; a plain split on `+` is enough.
        for term in s.split('+') {
            let (c, e) = term.split_once("*v^").ok_or_else(bad)?;
            let c: BigInt = c.trim().parse().map_err(|_| bad())?;
            let e: i64 = e.trim().parse().map_err(|_| bad())?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// LaTeX form used by the matrix emitter.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return ".".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let var = match *e {
                0 => String::new(),
                1 => "v".to_string(),
                k => format!("v^{{{k}}}"),
            };
            if var.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{mag}{var}"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Human form, ascending exponent: `v^-2 + 3*v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{mag}*v")?,
                (k, true) => write!(f, "v^{k}")?,
                (k, false) => write!(f, "{mag}*v^{k}")?,
            }
        }
        Ok(())
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let c: serde_json::Value = match i64::try_from(c) {
                Ok(small) => small.into(),
                // Out-of-range coefficients fall back to a decimal string.
                Err(_) => c.to_string().into(),
            };
            seq.serialize_element(&(e, c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(i64, serde_json::Value)> = Vec::deserialize(de)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in pairs {
            let c: BigInt = match c {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| serde::de::Error::custom("coefficient must be an integer"))?,
                serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom)?,
                _ => return Err(serde::de::Error::custom("coefficient must be an integer")),
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(&[(1, 1)]) + p(&[(-1, 1)]), p(&[(1, 1), (-1, 1)]));
        assert_eq!(p(&[(2, 1), (0, 1)]) + p(&[(0, -1)]), p(&[(2, 1)]));
        let q = p(&[(3, 2), (-4, -7)]);
        assert_eq!(LaurentPoly::zero() + q.clone(), q);
    }

    #[test]
    fn mul_examples() {
        let a = p(&[(1, 1), (-1, 1)]);
        assert_eq!(&a * &a, p(&[(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(&a * &LaurentPoly::one(), a);
        let b = p(&[(1, 1), (-1, -1)]);
        assert_eq!(&b * &a, p(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p(&[(2, 1), (1, 1)]).bar(), p(&[(-2, 1), (-1, 1)]));
        let q = p(&[(5, 3), (-1, 2)]);
        assert_eq!(q.bar().bar(), q);
        assert_eq!(LaurentPoly::from(3).bar(), LaurentPoly::from(3));
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(LaurentPoly::qint(1).unwrap(), LaurentPoly::one());
        assert_eq!(LaurentPoly::qint(2).unwrap(), p(&[(1, 1), (-1, 1)]));
        assert_eq!(LaurentPoly::qint(3).unwrap(), p(&[(2, 1), (0, 1), (-2, 1)]));
        assert!(matches!(LaurentPoly::qint(0), Err(Error::NonPositiveQuantumInteger(0))));
        assert!(LaurentPoly::qint(-3).is_err());
    }

    #[test]
    fn quantum_factorials() {
        assert_eq!(LaurentPoly::qfactorial(0), LaurentPoly::one());
        assert_eq!(LaurentPoly::qfactorial(2), p(&[(1, 1), (-1, 1)]));
        // (v + v^-1)(v^2 + 1 + v^-2) expanded by hand
        assert_eq!(LaurentPoly::qfactorial(3), p(&[(3, 1), (1, 2), (-1, 2), (-3, 1)]));
        for n in 0..=12 {
            assert!(LaurentPoly::qfactorial(n).is_bar_invariant());
        }
    }

    #[test]
    fn exact_division() {
        let q2 = p(&[(1, 1), (-1, 1)]);
        assert_eq!(p(&[(2, 1), (0, 2), (-2, 1)]).exact_div(&q2).unwrap(), q2);
        // v + 1 spans exponents [0,1]; any multiple of v + v^-1 has coefficients
        // at its extreme exponents equal to the quotient's extremes, with span >= 2.
        assert!(matches!(
            p(&[(1, 1), (0, 1)]).exact_div(&q2),
            Err(Error::DivisionNotExact { .. })
        ));
        assert!(matches!(q2.exact_div(&LaurentPoly::zero()), Err(Error::DivisionByZero)));
        assert_eq!(LaurentPoly::zero().exact_div(&q2).unwrap(), LaurentPoly::zero());
        // non-unit leading coefficient
        let d = p(&[(0, 2), (1, 3)]);
        let x = p(&[(-2, 5), (4, -1)]);
        assert_eq!((&x * &d).exact_div(&d).unwrap(), x);
        assert!(p(&[(0, 1)]).exact_div(&p(&[(0, 2)])).is_err());
    }

    #[test]
    fn bar_symmetric_part_examples() {
        assert_eq!(
            p(&[(1, 3), (0, 2), (-1, 1)]).bar_symmetric_part(),
            p(&[(0, 2), (1, 1), (-1, 1)])
        );
        assert_eq!(p(&[(5, 1)]).bar_symmetric_part(), LaurentPoly::zero());
        let sym = p(&[(2, 4), (-2, 4), (0, -1)]);
        assert_eq!(sym.bar_symmetric_part(), sym);
    }

    #[test]
    fn display_and_cells() {
        assert_eq!(p(&[(-2, 1), (1, 3)]).to_string(), "v^-2 + 3*v");
        assert_eq!(p(&[(0, -1), (2, 1)]).to_string(), "-1 + v^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let q = p(&[(-1, 2), (0, 1), (3, -4)]);
        assert_eq!(q.to_cell(), "2*v^-1+1*v^0+-4*v^3");
        assert_eq!(LaurentPoly::parse_cell(&q.to_cell()).unwrap(), q);
        assert_eq!(LaurentPoly::parse_cell(".").unwrap(), LaurentPoly::zero());
        assert!(LaurentPoly::parse_cell("v^2").is_err());
        assert_eq!(p(&[(2, 1), (1, 1)]).to_latex(), "v^{2} + v");
    }

    #[test]
    fn json_pairs_sorted() {
        let q = p(&[(3, -1), (-2, 5)]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[[-2,5],[3,-1]]");
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        let big = LaurentPoly::monomial(BigInt::from(i64::MAX) * 4, 1);
        let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }
}
