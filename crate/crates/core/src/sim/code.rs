//! A linear code over GF(q) given by its parity-check matrix, with a
//! systematic encoder obtained by Gauss-Jordan elimination.

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Gf};
use crate::gfmat::GfMatrix;
use crate::lifter::Lifting;

#[derive(Debug, Clone)]
pub struct CodeInstance {
    field: FieldSpec,
    h: GfMatrix,
    /// Nonzero entries of each check, `(var, coeff)`.
    checks: Vec<Vec<(usize, Gf)>>,
    rank: usize,
    /// Information positions, in order of the information symbols.
    info_positions: Vec<usize>,
    /// Parity position of each echelon row.
    parity_positions: Vec<usize>,
    /// Row `r` gives the parity symbol at `parity_positions[r]` as a
    /// combination of the information symbols.
    parity_map: Vec<Vec<(usize, Gf)>>,
}

impl CodeInstance {
    pub fn from_matrix(h: GfMatrix, field: FieldSpec) -> Result<Self> {
        let n = h.cols();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if (0..h.rows()).any(|r| h.row(r).iter().any(|&v| !field.contains(v))) {
            return Err(Error::InvalidParameter(format!(
                "matrix entry outside GF({})",
                field.q()
            )));
        }
        let echelon = h.echelon(&field);
        let mut is_pivot = vec![false; n];
        for &p in &echelon.pivots {
            is_pivot[p] = true;
        }
        let info_positions: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let parity_map = (0..echelon.rank())
            .map(|r| {
                info_positions
                    .iter()
                    .enumerate()
                    .map(|(t, &c)| (t, echelon.matrix.get(r, c)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        let checks = (0..h.rows()).map(|r| h.row_entries(r).collect()).collect();
        Ok(Self {
            rank: echelon.rank(),
            parity_positions: echelon.pivots,
            info_positions,
            parity_map,
            checks,
            field,
            h,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn parity_check(&self) -> &GfMatrix {
        &self.h
    }

    pub fn checks(&self) -> &[Vec<(usize, Gf)>] {
        &self.checks
    }

    /// Length in field symbols.
    pub fn n(&self) -> usize {
        self.h.cols()
    }

    /// Dimension in field symbols, `n - rank(H)`.
    pub fn k(&self) -> usize {
        self.info_positions.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of linearly dependent check rows.
    pub fn redundant_checks(&self) -> usize {
        self.h.rows() - self.rank
    }

    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    pub fn encode(&self, info: &[Gf]) -> Result<Vec<Gf>> {
        if info.len() != self.k() {
            return Err(Error::Dimension(format!(
                "expected {} information symbols, got {}",
                self.k(),
                info.len()
            )));
        }
        let f = &self.field;
        let mut word = vec![Gf::ZERO; self.n()];
        for (&pos, &v) in self.info_positions.iter().zip(info) {
            word[pos] = v;
        }
        for (row, &pos) in self.parity_map.iter().zip(&self.parity_positions) {
            word[pos] = row
                .iter()
                .fold(Gf::ZERO, |acc, &(t, h)| f.add(acc, f.mul(h, info[t])));
        }
        Ok(word)
    }

    pub fn syndrome(&self, word: &[Gf]) -> Vec<Gf> {
        let f = &self.field;
        self.checks
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Gf::ZERO, |acc, &(c, h)| f.add(acc, f.mul(h, word[c])))
            })
            .collect()
    }

    pub fn is_codeword(&self, word: &[Gf]) -> bool {
        word.len() == self.n()
            && self.checks.iter().all(|row| {
                row.iter()
                    .fold(Gf::ZERO, |acc, &(c, h)| {
                        self.field.add(acc, self.field.mul(h, word[c]))
                    })
                    .is_zero()
            })
    }
}

/// Expands a lifting and prepares its encoder.
pub fn build_code(lifting: &Lifting) -> Result<CodeInstance> {
    CodeInstance::from_matrix(lifting.expand(), lifting.field().clone())
}
