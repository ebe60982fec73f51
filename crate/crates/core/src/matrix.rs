//! Dense matrices of Laurent polynomials labeled by multipartitions, and their
//! CSV / LaTeX / JSON / text emitters.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::combinatorics::Multipartition;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix {
    pub row_labels: Vec<Multipartition>,
    pub col_labels: Vec<Multipartition>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl PolyMatrix {
    pub fn zeros(row_labels: Vec<Multipartition>, col_labels: Vec<Multipartition>) -> Self {
        let entries = vec![vec![LaurentPoly::zero(); col_labels.len()]; row_labels.len()];
        PolyMatrix {
            row_labels,
            col_labels,
            entries,
        }
    }

    pub fn identity(labels: Vec<Multipartition>) -> Self {
        let mut m = Self::zeros(labels.clone(), labels);
        for i in 0..m.nrows() {
            m.entries[i][i] = LaurentPoly::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_index(&self, label: &Multipartition) -> Option<usize> {
        self.row_labels.iter().position(|l| l == label)
    }

    pub fn col_index(&self, label: &Multipartition) -> Option<usize> {
        self.col_labels.iter().position(|l| l == label)
    }

    /// Entry at (row label, column label); zero when either label is absent.
    pub fn get(&self, row: &Multipartition, col: &Multipartition) -> LaurentPoly {
        match (self.row_index(row), self.col_index(col)) {
            (Some(r), Some(c)) => self.entries[r][c].clone(),
            _ => LaurentPoly::zero(),
        }
    }

    pub fn set(&mut self, row: &Multipartition, col: &Multipartition, value: LaurentPoly) -> Result<()> {
        let r = self
            .row_index(row)
            .ok_or_else(|| Error::Incompatible(format!("no row {row}")))?;
        let c = self
            .col_index(col)
            .ok_or_else(|| Error::Incompatible(format!("no column {col}")))?;
        self.entries[r][c] = value;
        Ok(())
    }

    /// Product `self * rhs`; the columns of `self` must carry the row labels of
    /// `rhs` (in any order).
    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ncols() != rhs.nrows() {
            return Err(Error::Incompatible(format!(
                "{}x{} times {}x{}",
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        let perm: Vec<usize> = self
            .col_labels
            .iter()
            .map(|l| {
                rhs.row_index(l)
                    .ok_or_else(|| Error::Incompatible(format!("{l} is not a row of the right factor")))
            })
            .collect::<Result<_>>()?;
        let mut out = PolyMatrix::zeros(self.row_labels.clone(), rhs.col_labels.clone());
        for i in 0..self.nrows() {
            for (k, &rk) in perm.iter().enumerate() {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols() {
                    let b = &rhs.entries[rk][j];
                    if !b.is_zero() {
                        out.entries[i][j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn eval_at_one(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(LaurentPoly::eval_at_one).collect())
            .collect()
    }

    /// CSV: a header `label,<columns>` then one line per row; cells use the
    /// `c*v^k` grammar with `.` for zero.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label");
        for c in &self.col_labels {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
        for (label, row) in self.row_labels.iter().zip(&self.entries) {
            out.push_str(&label.to_string());
            for cell in row {
                let _ = write!(out, ",{}", cell.to_cell());
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<PolyMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty CSV".into()))?;
        let mut head = header.split(',');
        if head.next() != Some("label") {
            return Err(Error::Parse("CSV header must start with `label`".into()));
        }
        let col_labels = head.map(str::parse).collect::<Result<Vec<Multipartition>>>()?;
        let mut row_labels = Vec::new();
        let mut entries = Vec::new();
        for line in lines {
            let mut cells = line.split(',');
            let label: Multipartition = cells
                .next()
                .ok_or_else(|| Error::Parse("missing row label".into()))?
                .parse()?;
            let row = cells.map(LaurentPoly::parse_cell).collect::<Result<Vec<_>>>()?;
            if row.len() != col_labels.len() {
                return Err(Error::Parse(format!("row {label} has {} cells", row.len())));
            }
            row_labels.push(label);
            entries.push(row);
        }
        Ok(PolyMatrix {
            row_labels,
            col_labels,
            entries,
        })
    }

    fn latex_label(m: &Multipartition) -> String {
        let comps: Vec<String> = m
            .components()
            .iter()
            .map(|p| {
                if p.is_empty() {
                    "\\emptyset".to_string()
                } else {
                    format!("({})", p.iter().map(u32::to_string).collect::<Vec<_>>().join("."))
                }
            })
            .collect();
        format!("({})", comps.join(","))
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "\\begin{{array}}{{c|{}}}", "c".repeat(self.ncols()));
        let header: Vec<String> = self.col_labels.iter().map(Self::latex_label).collect();
        let _ = writeln!(out, " & {} \\\\ \\hline", header.join(" & "));
        for (label, row) in self.row_labels.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(LaurentPoly::to_latex).collect();
            let _ = writeln!(out, "{} & {} \\\\", Self::latex_label(label), cells.join(" & "));
        }
        out.push_str("\\end{array}\n");
        out
    }

    /// Aligned plain-text table.
    pub fn to_text(&self) -> String {
        let cell = |p: &LaurentPoly| if p.is_zero() { ".".to_string() } else { p.to_string() };
        let mut grid: Vec<Vec<String>> = vec![std::iter::once(String::new())
            .chain(self.col_labels.iter().map(|c| c.to_string()))
            .collect()];
        for (label, row) in self.row_labels.iter().zip(&self.entries) {
            grid.push(std::iter::once(label.to_string()).chain(row.iter().map(cell)).collect());
        }
        let ncols = self.ncols() + 1;
        let widths: Vec<usize> = (0..ncols)
            .map(|j| grid.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in grid {
            let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}
