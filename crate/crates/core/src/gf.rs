//! Arithmetic in GF(2^p) for 1 <= p <= 8.
//!
//! Elements are integer codes: bit `k` of the code is the coefficient of
//! `α^k` in the polynomial basis. Multiplication goes through discrete
//! log/exp tables built from a primitive polynomial.

use std::fmt;

use crate::error::{Error, Result};

/// A field element, stored as its polynomial-basis bit vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gf(pub u8);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn value(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Conventional primitive polynomials, indexed by degree. Bit `k` is the
/// coefficient of `x^k`.
pub const DEFAULT_PRIMITIVE_POLYS: [u32; 9] = [
    0, 0x3,   // x + 1
    0x7,   // x^2 + x + 1
    0xb,   // x^3 + x + 1
    0x13,  // x^4 + x + 1
    0x25,  // x^5 + x^2 + 1
    0x43,  // x^6 + x + 1
    0x89,  // x^7 + x^3 + 1
    0x11d, // x^8 + x^4 + x^3 + x^2 + 1
];

/// GF(q), q = 2^p, with its log/exp tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    primitive_poly: u32,
    /// exp[k] = α^k for k in 0..2(q-1); doubled so products never need a modulo.
    exp: Vec<u8>,
    /// log[a] for a != 0; log[0] is unused.
    log: Vec<u16>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) mod {:#x}", self.q(), self.primitive_poly)
    }
}

impl FieldSpec {
    /// GF(2^p) with the default primitive polynomial of degree `p`.
    pub fn new(p: u32) -> Result<Self> {
        if !(1..=8).contains(&p) {
            return Err(Error::UnsupportedDegree(p));
        }
        Self::with_poly(p, DEFAULT_PRIMITIVE_POLYS[p as usize])
    }

    /// GF(q) for a power of two `q` in 2..=256.
    pub fn from_order(q: usize) -> Result<Self> {
        if !(2..=256).contains(&q) || !q.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "field order {q} is not a power of two in 2..=256"
            )));
        }
        Self::new(q.trailing_zeros())
    }

    /// GF(2^p) reduced modulo `poly`, which must be primitive of degree `p`.
    pub fn with_poly(p: u32, poly: u32) -> Result<Self> {
        if !(1..=8).contains(&p) {
            return Err(Error::UnsupportedDegree(p));
        }
        if poly >> p != 1 {
            return Err(Error::NotPrimitive { degree: p, poly });
        }
        let q = 1usize << p;
        let order = q - 1;
        let mut exp = vec![0u8; 2 * order];
        let mut log = vec![0u16; q];
        let mut x: u32 = 1;
        for k in 0..order {
            // α^k = 1 for some 0 < k < q-1 means α does not generate.
            if k > 0 && x == 1 {
                return Err(Error::NotPrimitive { degree: p, poly });
            }
            exp[k] = x as u8;
            exp[k + order] = x as u8;
            log[x as usize] = k as u16;
            x <<= 1;
            if x & (1 << p) != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::NotPrimitive { degree: p, poly });
        }
        Ok(Self {
            p,
            primitive_poly: poly,
            exp,
            log,
        })
    }

    /// Extension degree `p`.
    pub fn degree(&self) -> u32 {
        self.p
    }

    /// Field order `q = 2^p`.
    pub fn q(&self) -> usize {
        1 << self.p
    }

    pub fn primitive_poly(&self) -> u32 {
        self.primitive_poly
    }

    /// Element from an integer code, or `None` if the code is out of range.
    pub fn element(&self, code: usize) -> Option<Gf> {
        (code < self.q()).then_some(Gf(code as u8))
    }

    pub fn contains(&self, a: Gf) -> bool {
        a.value() < self.q()
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.q()).map(|v| Gf(v as u8))
    }

    /// The q-1 nonzero elements in code order.
    pub fn nonzero(&self) -> impl Iterator<Item = Gf> {
        (1..self.q()).map(|v| Gf(v as u8))
    }

    /// `α^k`.
    pub fn alpha_pow(&self, k: usize) -> Gf {
        Gf(self.exp[k % (self.q() - 1)])
    }

    /// Discrete logarithm base α of a nonzero element.
    pub fn log(&self, a: Gf) -> Result<usize> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.log[a.value()] as usize)
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        Gf(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.is_zero() || b.is_zero() {
            return Gf::ZERO;
        }
        Gf(self.exp[self.log[a.value()] as usize + self.log[b.value()] as usize])
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let order = self.q() - 1;
        Ok(Gf(self.exp[(order - self.log[a.value()] as usize) % order]))
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Permutation table of multiplication by `h`: `table[a] = h·a`.
    pub fn mul_map(&self, h: Gf) -> Vec<u8> {
        self.elements().map(|a| self.mul(h, a).0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Carry-less multiply of the bit vectors, then reduce modulo `poly`.
    fn clmul_reduce(a: u32, b: u32, p: u32, poly: u32) -> u32 {
        let mut prod = 0u32;
        for k in 0..p {
            if b >> k & 1 == 1 {
                prod ^= a << k;
            }
        }
        for k in (p..2 * p).rev() {
            if prod >> k & 1 == 1 {
                prod ^= poly << (k - p);
            }
        }
        prod
    }

    #[test]
    fn add_examples() {
        let f = FieldSpec::new(2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, a), Gf::ZERO);
            assert_eq!(f.add(a, Gf::ZERO), a);
        }
        assert_eq!(f.add(Gf(2), Gf(3)), Gf(1));
    }

    #[test]
    fn mul_examples() {
        let f = FieldSpec::new(2).unwrap();
        for a in f.elements() {
            assert_eq!(f.mul(a, Gf::ONE), a);
            assert_eq!(f.mul(a, Gf::ZERO), Gf::ZERO);
        }
        assert_eq!(f.mul(Gf(2), Gf(3)), Gf(1));
    }

    #[test]
    fn inv_examples() {
        let f4 = FieldSpec::new(2).unwrap();
        assert_eq!(f4.inv(Gf(1)).unwrap(), Gf(1));
        // exhaustive search oracle
        let brute = f4.nonzero().find(|&b| f4.mul(Gf(2), b) == Gf::ONE).unwrap();
        assert_eq!(brute, Gf(3));
        assert_eq!(f4.inv(Gf(2)).unwrap(), Gf(3));
        assert!(matches!(f4.inv(Gf::ZERO), Err(Error::ZeroInverse)));

        let f16 = FieldSpec::new(4).unwrap();
        for a in f16.nonzero() {
            assert_eq!(f16.mul(a, f16.inv(a).unwrap()), Gf::ONE);
        }
    }

    #[test]
    fn default_polys_are_primitive() {
        for p in 1..=8 {
            let f = FieldSpec::new(p).unwrap();
            let order = f.q() - 1;
            let alpha = if p == 1 { Gf(1) } else { Gf(2) };
            let mut x = Gf::ONE;
            for k in 1..order {
                x = f.mul(x, alpha);
                assert_ne!(x, Gf::ONE, "p={p} k={k}");
            }
            for a in f.nonzero() {
                assert_eq!(f.alpha_pow(f.log(a).unwrap()), a);
            }
        }
    }

    #[test]
    fn rejects_non_primitive() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible but α has order 5
        assert!(matches!(
            FieldSpec::with_poly(4, 0x1f),
            Err(Error::NotPrimitive { .. })
        ));
        // reducible
        assert!(FieldSpec::with_poly(2, 0x5).is_err());
        assert!(FieldSpec::with_poly(3, 0x7).is_err());
        assert!(FieldSpec::new(9).is_err());
        assert!(FieldSpec::from_order(12).is_err());
        assert_eq!(FieldSpec::from_order(64).unwrap().degree(), 6);
        // an alternative primitive polynomial is accepted
        assert!(FieldSpec::with_poly(4, 0x19).is_ok());
    }

    #[test]
    fn mul_matches_clmul_oracle() {
        for p in 1..=6 {
            let f = FieldSpec::new(p).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let want = clmul_reduce(a.0 as u32, b.0 as u32, p, f.primitive_poly());
                    assert_eq!(f.mul(a, b).0 as u32, want, "p={p} {a}*{b}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for p in [2, 3, 4, 8] {
            let f = FieldSpec::new(p).unwrap();
            let els: Vec<Gf> = f.elements().collect();
            // triple loops are too slow for q=256; sample the third operand there
            let step = if p == 8 { 37 } else { 1 };
            for &a in &els {
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Gf::ONE);
                }
                for &b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for &c in els.iter().step_by(step) {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
