//! Dense matrices over GF(q): the expanded parity-check matrix and the
//! Gaussian-elimination routines behind rank, singularity and encoding.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Gf};

#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf>,
}

/// Reduced row echelon form with the pivot column of each nonzero row.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub matrix: GfMatrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl GfMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Gf::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Gf::ONE);
        }
        m
    }

    /// Builds a matrix from integer codes, one inner vector per row.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&v| Gf(v)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Gf {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Gf) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Gf] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Nonzero entries of row `r` as `(col, value)`.
    pub fn row_entries(&self, r: usize) -> impl Iterator<Item = (usize, Gf)> + '_ {
        self.row(r)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, &v)| (c, v))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn to_codes(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|v| v.0).collect())
            .collect()
    }

    pub fn mul(&self, other: &GfMatrix, field: &FieldSpec) -> Result<GfMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = GfMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.row_entries(i) {
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let acc = field.add(out.get(i, j), field.mul(a, b));
                        out.set(i, j, acc);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `H · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Gf], field: &FieldSpec) -> Vec<Gf> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row_entries(r)
                    .fold(Gf::ZERO, |acc, (c, h)| field.add(acc, field.mul(h, v[c])))
            })
            .collect()
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn echelon(&self, field: &FieldSpec) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        let mul_rows: Vec<Vec<u8>> = field.elements().map(|h| field.mul_map(h)).collect();
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pr != lead {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, lead * m.cols + c);
                }
            }
            let inv = field.inv(m.get(lead, col)).expect("pivot is nonzero");
            let scale = &mul_rows[inv.value()];
            for c in col..m.cols {
                let v = m.get(lead, c);
                m.set(lead, c, Gf(scale[v.value()]));
            }
            let pivot_row: Vec<(usize, Gf)> = (col..m.cols)
                .map(|c| (c, m.get(lead, c)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let f = m.get(r, col);
                if f.is_zero() {
                    continue;
                }
                let scale = &mul_rows[f.value()];
                let base = r * m.cols;
                for &(c, v) in &pivot_row {
                    m.data[base + c].0 ^= scale[v.value()];
                }
            }
            pivots.push(col);
            lead += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self, field: &FieldSpec) -> usize {
        self.echelon(field).rank()
    }

    /// True for a square matrix of less than full rank.
    pub fn is_singular(&self, field: &FieldSpec) -> bool {
        self.rank(field) < self.rows.min(self.cols) || self.rows != self.cols
    }
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        Ok(())
    }
}
