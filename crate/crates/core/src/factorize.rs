//! The relative decomposition matrix `D_inf^e(v)` with `D_e = D_inf * D_inf^e`,
//! extracted from the two canonical bases, plus an independent triangular
//! solver and a verification report.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_basis_any_charge, CanonicalBasisSet};
use crate::combinatorics::{
    compare_dominance, enumerate_multipartitions, gamma_lex_cmp, Dominance, Modulus, Multicharge, Multipartition,
};
use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;

/// Standard-basis matrix of a canonical basis set: rows are all of
/// `Pi_{l,n}`, columns the basis labels, both descending gamma-lex.
pub fn decomposition_matrix(set: &CanonicalBasisSet) -> PolyMatrix {
    let rows = enumerate_multipartitions(&set.space.charge, set.rank);
    let cols = set.labels();
    let mut m = PolyMatrix::zeros(rows, cols);
    for (j, g) in set.elements.iter().enumerate() {
        for (mu, c) in g.vector.iter() {
            let i = m.row_index(mu).expect("support lies in Pi_{l,n}");
            m.entries[i][j] = c.clone();
        }
    }
    m
}

fn check_compatible(ge: &CanonicalBasisSet, ginf: &CanonicalBasisSet) -> Result<()> {
    if ge.space.charge != ginf.space.charge || ge.rank != ginf.rank {
        return Err(Error::Incompatible("basis sets differ in charge or rank".into()));
    }
    if !ginf.space.modulus.is_infinite() {
        return Err(Error::Incompatible("second basis must be for e = infinity".into()));
    }
    Ok(())
}

/// Column `lambda` of `D_inf^e`: peel `G_inf` vectors off `G_e(lambda)`,
/// always at the gamma-lex greatest remaining term.
fn relative_column(
    label: &Multipartition,
    ge: &FockVector,
    ginf: &CanonicalBasisSet,
    limit: usize,
) -> Result<Vec<(Multipartition, LaurentPoly)>> {
    let charge = &ginf.space.charge;
    let mut residual = ge.clone();
    let mut column = Vec::new();
    let mut next = label.clone();
    let mut coeff = LaurentPoly::one();
    for _ in 0..=limit {
        let g = ginf
            .vector(&next)
            .ok_or_else(|| Error::NotInBInfinity(next.to_string()))?;
        residual -= &g.scale(&coeff);
        column.push((next.clone(), coeff));
        let Some((top, c)) = residual
            .iter()
            .max_by(|a, b| gamma_lex_cmp(a.0, b.0, charge))
            .map(|(m, c)| (m.clone(), c.clone()))
        else {
            return Ok(column);
        };
        next = top;
        coeff = c;
    }
    Err(Error::NonTermination(label.to_string()))
}

/// `D_inf^e(v)`: rows are the `e = infinity` labels, columns the finite-e labels.
pub fn extract_relative(ge: &CanonicalBasisSet, ginf: &CanonicalBasisSet) -> Result<PolyMatrix> {
    check_compatible(ge, ginf)?;
    let limit = enumerate_multipartitions(&ge.space.charge, ge.rank).len();
    let columns: Vec<Vec<(Multipartition, LaurentPoly)>> = ge
        .elements
        .par_iter()
        .map(|g| relative_column(&g.label, &g.vector, ginf, limit))
        .collect::<Result<_>>()?;
    let mut m = PolyMatrix::zeros(ginf.labels(), ge.labels());
    for (g, col) in ge.elements.iter().zip(columns) {
        for (row, c) in col {
            m.set(&row, &g.label, c)?;
        }
    }
    Ok(m)
}

/// Solves `D_inf * X = D_e` by back-substitution on the unitriangular rows of
/// `D_inf`, independently of the canonical basis vectors.
pub fn back_substitution_oracle(de: &PolyMatrix, dinf: &PolyMatrix) -> Result<PolyMatrix> {
    if de.row_labels != dinf.row_labels {
        return Err(Error::Incompatible("D_e and D_inf must share row labels".into()));
    }
    let mut x = PolyMatrix::zeros(dinf.col_labels.clone(), de.col_labels.clone());
    // Column nu of D_inf has its 1 in row nu; everything else in that column
    // sits at rows processed later, so walk the pivots in column order.
    let pivots: Vec<usize> = dinf
        .col_labels
        .iter()
        .map(|c| {
            dinf.row_index(c)
                .ok_or_else(|| Error::Incompatible(format!("pivot row {c} missing")))
        })
        .collect::<Result<_>>()?;
    for j in 0..de.ncols() {
        for (k, &r) in pivots.iter().enumerate() {
            let mut rhs = de.entries[r][j].clone();
            for (kk, _) in pivots.iter().enumerate().filter(|&(kk, _)| kk != k) {
                let a = &dinf.entries[r][kk];
                if !a.is_zero() && !x.entries[kk][j].is_zero() {
                    rhs -= &(a * &x.entries[kk][j]);
                }
            }
            let pivot = &dinf.entries[r][k];
            if pivot.is_zero() {
                return Err(Error::InconsistentSystem {
                    row: dinf.row_labels[r].to_string(),
                    col: de.col_labels[j].to_string(),
                });
            }
            x.entries[k][j] = rhs.exact_div(pivot).map_err(|_| Error::InconsistentSystem {
                row: dinf.row_labels[r].to_string(),
                col: de.col_labels[j].to_string(),
            })?;
        }
    }
    let product = dinf.mul(&x)?;
    for (i, row) in product.entries.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if *p != de.entries[i][j] {
                return Err(Error::InconsistentSystem {
                    row: de.row_labels[i].to_string(),
                    col: de.col_labels[j].to_string(),
                });
            }
        }
    }
    Ok(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn push(&mut self, check: &str, failures: Vec<String>) {
        let pass = failures.is_empty();
        let detail = if pass {
            "ok".to_string()
        } else {
            let shown: Vec<String> = failures.iter().take(5).cloned().collect();
            format!("{} violation(s): {}", failures.len(), shown.join("; "))
        };
        self.checks.push(CheckResult {
            check: check.to_string(),
            pass,
            detail,
        });
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.checks).expect("serializable")
    }
}

/// Unitriangularity of a standard-basis matrix: each column has 1 at its own
/// label, off-diagonal entries in `v N[v]`, and support strictly below the label.
pub fn column_violations(m: &PolyMatrix, charge: &Multicharge) -> Vec<String> {
    let mut bad = Vec::new();
    for (j, col) in m.col_labels.iter().enumerate() {
        for (i, row) in m.row_labels.iter().enumerate() {
            let p = &m.entries[i][j];
            if row == col {
                if !p.is_one() {
                    bad.push(format!("diagonal ({row},{col}) = {p}"));
                }
                continue;
            }
            if p.is_zero() {
                continue;
            }
            if !p.in_v_z_v() || !p.has_nonnegative_coeffs() {
                bad.push(format!("({row},{col}) = {p} not in vN[v]"));
            }
            match compare_dominance(col, row, charge) {
                Ok(Dominance::Greater) => {}
                _ => bad.push(format!("({row},{col}) nonzero but {col} does not dominate {row}")),
            }
        }
        if m.row_index(col).is_none() {
            bad.push(format!("column label {col} is not a row label"));
        }
    }
    bad
}

/// Checks the factorization identity and the structure of `D_inf^e`.
pub fn verify(de: &PolyMatrix, dinf: &PolyMatrix, drel: &PolyMatrix, charge: &Multicharge) -> VerificationReport {
    let mut report = VerificationReport::default();

    let product = dinf.mul(drel);
    let mut fails = Vec::new();
    match &product {
        Ok(p) if p.row_labels == de.row_labels && p.col_labels == de.col_labels => {
            for (i, row) in p.entries.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if *x != de.entries[i][j] {
                        fails.push(format!(
                            "({},{}): {} != {}",
                            de.row_labels[i], de.col_labels[j], x, de.entries[i][j]
                        ));
                    }
                }
            }
        }
        Ok(_) => fails.push("label mismatch between D_inf*D_rel and D_e".into()),
        Err(e) => fails.push(e.to_string()),
    }
    report.push("factorization", fails);

    let mut fails = Vec::new();
    for (j, lam) in drel.col_labels.iter().enumerate() {
        if drel.row_index(lam).is_none() {
            fails.push(format!("{lam} has no row"));
        }
        for (i, nu) in drel.row_labels.iter().enumerate() {
            let d = &drel.entries[i][j];
            if nu == lam {
                if !d.is_one() {
                    fails.push(format!("d({lam},{lam}) = {d}"));
                }
            } else if !d.in_v_z_v() {
                fails.push(format!("d({lam},{nu}) = {d} not in vZ[v]"));
            }
        }
    }
    report.push("unitriangular", fails);

    let mut fails = Vec::new();
    for (j, lam) in drel.col_labels.iter().enumerate() {
        for (i, nu) in drel.row_labels.iter().enumerate() {
            if drel.entries[i][j].is_zero() {
                continue;
            }
            match compare_dominance(lam, nu, charge) {
                Ok(Dominance::Greater | Dominance::Equal) => {}
                other => fails.push(format!("d({lam},{nu}) != 0 but relation is {other:?}")),
            }
        }
    }
    report.push("dominance_support", fails);

    let mut fails = Vec::new();
    for (j, lam) in drel.col_labels.iter().enumerate() {
        for (i, nu) in drel.row_labels.iter().enumerate() {
            let d = &drel.entries[i][j];
            if !d.is_polynomial() || !d.has_nonnegative_coeffs() {
                fails.push(format!("d({lam},{nu}) = {d} not in N[v]"));
            }
        }
    }
    report.push("positivity", fails);

    let mut fails = Vec::new();
    let lhs = de.eval_at_one();
    let a = dinf.eval_at_one();
    let b = drel.eval_at_one();
    let perm: Vec<Option<usize>> = dinf.col_labels.iter().map(|c| drel.row_index(c)).collect();
    if perm.iter().any(Option::is_none) || lhs.len() != a.len() {
        fails.push("shape mismatch at v = 1".into());
    } else {
        for i in 0..lhs.len() {
            for j in 0..drel.ncols() {
                let s: num_bigint::BigInt = perm
                    .iter()
                    .enumerate()
                    .map(|(k, r)| &a[i][k] * &b[r.expect("checked")][j])
                    .sum();
                if s != lhs[i][j] {
                    fails.push(format!(
                        "({},{}) at v=1: {} != {}",
                        de.row_labels[i], de.col_labels[j], s, lhs[i][j]
                    ));
                }
            }
        }
    }
    report.push("factorization_at_v1", fails);

    report.push("canonical_columns_e", column_violations(de, charge));
    report.push("canonical_columns_inf", column_violations(dinf, charge));
    report
}

/// Everything computed for one `(e, s, n)` instance.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub modulus: Modulus,
    pub charge: Multicharge,
    pub rank: usize,
    pub basis_e: CanonicalBasisSet,
    pub basis_inf: CanonicalBasisSet,
    pub d_e: PolyMatrix,
    pub d_inf: PolyMatrix,
    pub d_rel: PolyMatrix,
}

impl Factorization {
    pub fn verify(&self) -> VerificationReport {
        verify(&self.d_e, &self.d_inf, &self.d_rel, &self.charge)
    }

    pub fn crystal_labels_consistent(&self) -> bool {
        let inf: BTreeSet<_> = self.basis_inf.labels().into_iter().collect();
        self.basis_e.labels().iter().all(|l| inf.contains(l))
    }
}

pub fn factorize(modulus: Modulus, charge: &Multicharge, n: usize) -> Result<Factorization> {
    if modulus.is_infinite() {
        return Err(Error::InvalidArgument("factorization needs a finite e".into()));
    }
    let basis_e = canonical_basis_any_charge(modulus, charge, n)?;
    let basis_inf = canonical_basis_any_charge(Modulus::Infinite, charge, n)?;
    let d_e = decomposition_matrix(&basis_e);
    let d_inf = decomposition_matrix(&basis_inf);
    let d_rel = extract_relative(&basis_e, &basis_inf)?;
    Ok(Factorization {
        modulus,
        charge: charge.clone(),
        rank: n,
        basis_e,
        basis_inf,
        d_e,
        d_inf,
        d_rel,
    })
}
