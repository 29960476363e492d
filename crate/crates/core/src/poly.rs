//! The circulant algebra GF(q)[x]/(x^s - 1).
//!
//! A ring element with coefficient vector `c` stands for the s×s circulant
//! whose first column is `c`, so `βx^z` expands to β times the matrix with
//! ones where `row - col ≡ z (mod s)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Gf};
use crate::gfmat::GfMatrix;

/// Largest square matrix `determinant` accepts (cycles up to length 12).
pub const MAX_DET_SIZE: usize = 6;

/// Element of GF(q)[x]/(x^s - 1); `coeffs[t]` is the coefficient of `x^t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    coeffs: Vec<Gf>,
}

impl RingElement {
    pub fn zero(s: usize) -> Self {
        Self {
            coeffs: vec![Gf::ZERO; s],
        }
    }

    pub fn one(s: usize) -> Self {
        Self::monomial(s, Monomial::new(Gf::ONE, 0))
    }

    pub fn monomial(s: usize, m: Monomial) -> Self {
        let mut r = Self::zero(s);
        r.coeffs[m.shift % s] = m.beta;
        r
    }

    /// From a coefficient vector; its length is the circulant size.
    pub fn from_coeffs(coeffs: Vec<Gf>) -> Self {
        Self { coeffs }
    }

    pub fn s(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Gf] {
        &self.coeffs
    }

    pub fn coeff(&self, t: usize) -> Gf {
        self.coeffs[t]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Number of nonzero terms (the circulant weight).
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// The single term of a weight-1 element.
    pub fn as_monomial(&self) -> Option<Monomial> {
        let mut terms = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (shift, &beta) = terms.next()?;
        terms.next().is_none().then_some(Monomial { beta, shift })
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.s() != other.s() {
            return Err(Error::RingMismatch(self.s(), other.s()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| Gf(a.0 ^ b.0))
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self, field: &FieldSpec) -> Result<Self> {
        self.check_same_ring(other)?;
        let s = self.s();
        let mut out = Self::zero(s);
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, &b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                let t = (i + j) % s;
                out.coeffs[t] = field.add(out.coeffs[t], field.mul(a, b));
            }
        }
        Ok(out)
    }

    /// The s×s circulant this element stands for.
    pub fn circulant(&self) -> GfMatrix {
        let s = self.s();
        let mut m = GfMatrix::zeros(s, s);
        write_circulant(&mut m, 0, 0, self);
        m
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| Monomial::new(*c, t).to_string())
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `β·x^shift`, a β-scaled cyclic permutation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub beta: Gf,
    pub shift: usize,
}

impl Monomial {
    pub fn new(beta: Gf, shift: usize) -> Self {
        Self { beta, shift }
    }

    pub fn mul(self, other: Monomial, s: usize, field: &FieldSpec) -> Monomial {
        Monomial {
            beta: field.mul(self.beta, other.beta),
            shift: (self.shift + other.shift) % s,
        }
    }

    pub fn to_ring(self, s: usize) -> RingElement {
        RingElement::monomial(s, self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.beta.0, self.shift) {
            (b, 0) => write!(f, "{b}"),
            (1, 1) => write!(f, "x"),
            (1, z) => write!(f, "x^{z}"),
            (b, 1) => write!(f, "{b}x"),
            (b, z) => write!(f, "{b}x^{z}"),
        }
    }
}

/// A matrix over GF(q)[x]/(x^s - 1), the polynomial form of a QC matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    s: usize,
    entries: Vec<RingElement>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, s: usize) -> Self {
        Self {
            rows,
            cols,
            s,
            entries: vec![RingElement::zero(s); rows * cols],
        }
    }

    /// From a grid of optional monomials; `None` is the zero polynomial.
    pub fn from_monomials(s: usize, grid: &[Vec<Option<Monomial>>]) -> Result<Self> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        if grid.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged polynomial matrix".into()));
        }
        let mut m = Self::zeros(rows, cols, s);
        for (i, row) in grid.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if let Some(mono) = e {
                    m.set(i, j, mono.to_ring(s))?;
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: RingElement) -> Result<()> {
        if e.s() != self.s {
            return Err(Error::RingMismatch(self.s, e.s()));
        }
        self.entries[i * self.cols + j] = e;
        Ok(())
    }

    /// Submatrix on the given rows and columns, in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = Self::zeros(rows.len(), cols.len(), self.s);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.entries[a * cols.len() + b] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Determinant by cofactor expansion along the first row. Signs drop out
    /// in characteristic 2.
    pub fn determinant(&self, field: &FieldSpec) -> Result<RingElement> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows > MAX_DET_SIZE {
            return Err(Error::UnsupportedSize(self.rows));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.cofactor(&rows, &cols, field))
    }

    fn cofactor(&self, rows: &[usize], cols: &[usize], field: &FieldSpec) -> RingElement {
        match rows.len() {
            0 => RingElement::one(self.s),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = RingElement::zero(self.s);
                for (k, &c) in cols.iter().enumerate() {
                    let e = self.get(rows[0], c);
                    if e.is_zero() {
                        continue;
                    }
                    let minor_cols: Vec<usize> = cols
                        .iter()
                        .enumerate()
                        .filter(|&(kk, _)| kk != k)
                        .map(|(_, &cc)| cc)
                        .collect();
                    let minor = self.cofactor(&rows[1..], &minor_cols, field);
                    let term = e.mul(&minor, field).expect("same ring");
                    acc = acc.add(&term).expect("same ring");
                }
                acc
            }
        }
    }

    /// Replaces every entry by its s×s circulant: an (rows·s)×(cols·s)
    /// matrix over GF(q).
    pub fn expand(&self) -> GfMatrix {
        let s = self.s;
        let mut out = GfMatrix::zeros(self.rows * s, self.cols * s);
        for i in 0..self.rows {
            for j in 0..self.cols {
                write_circulant(&mut out, i * s, j * s, self.get(i, j));
            }
        }
        out
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn write_circulant(m: &mut GfMatrix, r0: usize, c0: usize, e: &RingElement) {
    let s = e.s();
    for (t, &c) in e.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for col in 0..s {
            m.set(r0 + (col + t) % s, c0 + col, c);
        }
    }
}

/// Determinant of a square grid of optional monomials, by expanding into
/// the permutation terms: each term is itself a monomial, so the sum is
/// accumulated directly into a coefficient vector.
pub fn monomial_determinant(
    grid: &[&[Option<Monomial>]],
    s: usize,
    field: &FieldSpec,
) -> RingElement {
    fn go(
        grid: &[&[Option<Monomial>]],
        row: usize,
        used: u32,
        acc: Monomial,
        s: usize,
        field: &FieldSpec,
        out: &mut [Gf],
    ) {
        if row == grid.len() {
            out[acc.shift] = field.add(out[acc.shift], acc.beta);
            return;
        }
        for (c, e) in grid[row].iter().enumerate() {
            if used >> c & 1 == 1 {
                continue;
            }
            if let Some(m) = e {
                go(
                    grid,
                    row + 1,
                    used | 1 << c,
                    acc.mul(*m, s, field),
                    s,
                    field,
                    out,
                );
            }
        }
    }
    let mut coeffs = vec![Gf::ZERO; s];
    go(grid, 0, 0, Monomial::new(Gf::ONE, 0), s, field, &mut coeffs);
    RingElement::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FieldSpec {
        FieldSpec::new(2).unwrap()
    }

    fn re(coeffs: &[u8]) -> RingElement {
        RingElement::from_coeffs(coeffs.iter().map(|&c| Gf(c)).collect())
    }

    fn mono(beta: u8, shift: usize) -> Option<Monomial> {
        Some(Monomial::new(Gf(beta), shift))
    }

    #[test]
    fn ring_add_examples() {
        let a = re(&[1, 1, 0]);
        assert_eq!(a.add(&RingElement::zero(3)).unwrap(), a);
        assert!(a.add(&a).unwrap().is_zero());
        // (x + 1) + (x^2 + 1) = x^2 + x
        assert_eq!(a.add(&re(&[1, 0, 1])).unwrap(), re(&[0, 1, 1]));
        assert!(matches!(
            a.add(&RingElement::zero(4)),
            Err(Error::RingMismatch(3, 4))
        ));
    }

    #[test]
    fn ring_mul_examples() {
        let f = gf4();
        let a = re(&[3, 0, 2]);
        assert_eq!(a.mul(&RingElement::one(3), &f).unwrap(), a);
        let x2 = re(&[0, 0, 1]);
        assert_eq!(x2.mul(&x2, &f).unwrap(), re(&[0, 1, 0]));
        // (2x)(3x^3) = 1 over GF(4), s = 4
        let p = re(&[0, 2, 0, 0]).mul(&re(&[0, 0, 0, 3]), &f).unwrap();
        assert_eq!(p, RingElement::one(4));
        assert!(a.mul(&RingElement::one(5), &f).is_err());
    }

    #[test]
    fn mono_mul_examples() {
        let f = FieldSpec::new(4).unwrap();
        let b = Monomial::new(Gf(7), 0);
        assert_eq!(b.mul(Monomial::new(Gf::ONE, 0), 5, &f), b);
        assert_eq!(
            Monomial::new(Gf::ONE, 3).mul(Monomial::new(Gf::ONE, 4), 5, &f),
            Monomial::new(Gf::ONE, 2)
        );
        for (x, y) in [((3u8, 4usize), (9u8, 2usize)), ((15, 1), (2, 4))] {
            let a = Monomial::new(Gf(x.0), x.1);
            let b = Monomial::new(Gf(y.0), y.1);
            let via_ring = a.to_ring(5).mul(&b.to_ring(5), &f).unwrap();
            assert_eq!(a.mul(b, 5, &f).to_ring(5), via_ring);
        }
    }

    #[test]
    fn determinant_examples() {
        let f = gf4();
        let s = 3;
        let id = PolyMatrix::from_monomials(
            s,
            &[
                vec![mono(1, 0), None, None],
                vec![None, mono(1, 0), None],
                vec![None, None, mono(1, 0)],
            ],
        )
        .unwrap();
        assert_eq!(id.determinant(&f).unwrap(), RingElement::one(s));

        let (a, b, c, d) = (mono(2, 1), mono(1, 2), mono(3, 0), mono(1, 1));
        let m = PolyMatrix::from_monomials(s, &[vec![a, b], vec![c, d]]).unwrap();
        let to = |m: Option<Monomial>| m.unwrap().to_ring(s);
        let want = to(a)
            .mul(&to(d), &f)
            .unwrap()
            .add(&to(b).mul(&to(c), &f).unwrap())
            .unwrap();
        assert_eq!(m.determinant(&f).unwrap(), want);

        // [[x, 1], [1, 1]] -> x + 1
        let m = PolyMatrix::from_monomials(
            s,
            &[vec![mono(1, 1), mono(1, 0)], vec![mono(1, 0), mono(1, 0)]],
        )
        .unwrap();
        assert_eq!(m.determinant(&f).unwrap(), re(&[1, 1, 0]));
    }

    #[test]
    fn determinant_errors() {
        let f = gf4();
        assert!(matches!(
            PolyMatrix::zeros(2, 3, 3).determinant(&f),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            PolyMatrix::zeros(7, 7, 3).determinant(&f),
            Err(Error::UnsupportedSize(7))
        ));
    }

    #[test]
    fn expand_example_one() {
        let grid = vec![
            vec![None, mono(1, 2), mono(2, 1)],
            vec![mono(1, 0), None, mono(3, 2)],
        ];
        let h = PolyMatrix::from_monomials(3, &grid).unwrap().expand();
        let want = GfMatrix::from_rows(&[
            vec![0, 0, 0, 0, 1, 0, 0, 0, 2],
            vec![0, 0, 0, 0, 0, 1, 2, 0, 0],
            vec![0, 0, 0, 1, 0, 0, 0, 2, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 3, 0],
            vec![0, 1, 0, 0, 0, 0, 0, 0, 3],
            vec![0, 0, 1, 0, 0, 0, 3, 0, 0],
        ])
        .unwrap();
        assert_eq!(h, want);
        assert_eq!(RingElement::zero(3).circulant(), GfMatrix::zeros(3, 3));
    }

    #[test]
    fn display() {
        assert_eq!(re(&[1, 0, 3]).to_string(), "3x^2 + 1");
        assert_eq!(re(&[0, 2, 0]).to_string(), "2x");
        assert_eq!(RingElement::zero(2).to_string(), "0");
    }
}
