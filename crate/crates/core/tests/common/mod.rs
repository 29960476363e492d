//! Helpers shared by the integration tests, including independent oracles.
#![allow(dead_code)]

use std::collections::BTreeSet;

use nbqc::{BaseMatrix, Cycle, FieldSpec, Gf, Lifting, Monomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn example_one() -> Lifting {
    let base = BaseMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
    let m = |b: u8, z: usize| Monomial::new(Gf(b), z);
    Lifting::from_assignments(
        base,
        3,
        FieldSpec::new(2).unwrap(),
        &[
            (0, 1, m(1, 2)),
            (0, 2, m(2, 1)),
            (1, 0, m(1, 0)),
            (1, 2, m(3, 2)),
        ],
    )
    .unwrap()
}

/// The expanded matrix printed for the example lifting.
pub const EXAMPLE_ONE_H: [[u8; 9]; 6] = [
    [0, 0, 0, 0, 1, 0, 0, 0, 2],
    [0, 0, 0, 0, 0, 1, 2, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 2, 0],
    [1, 0, 0, 0, 0, 0, 0, 3, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 3],
    [0, 0, 1, 0, 0, 0, 3, 0, 0],
];

pub fn random_base(rng: &mut impl Rng, m: usize, n: usize, density: f64) -> BaseMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.random_bool(density) as i64).collect())
            .collect();
        if let Ok(b) = BaseMatrix::from_rows(&rows) {
            if b.validate().is_ok() {
                return b;
            }
        }
    }
}

pub fn random_lifting(rng: &mut impl Rng, base: BaseMatrix, s: usize, field: FieldSpec) -> Lifting {
    let q = field.q() as u64;
    let assignments: Vec<_> = base
        .edges()
        .into_iter()
        .map(|(i, j)| {
            (
                i,
                j,
                Monomial::new(Gf(rng.random_range(1..q) as u8), rng.random_range(0..s)),
            )
        })
        .collect();
    Lifting::from_assignments(base, s, field, &assignments).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Exhaustive cycle enumeration: every sequence of `k` distinct columns and
/// `k` distinct rows forming a closed walk `c0 r0 c1 r1 ... r_{k-1} c0`.
pub fn brute_force_cycles(base: &BaseMatrix, depth: usize) -> BTreeSet<Cycle> {
    let mut out = BTreeSet::new();
    for k in 2..=depth / 2 {
        let mut cols = Vec::new();
        let mut rows = Vec::new();
        sequences(base, k, &mut cols, &mut rows, &mut out);
    }
    out
}

fn sequences(
    base: &BaseMatrix,
    k: usize,
    cols: &mut Vec<usize>,
    rows: &mut Vec<usize>,
    out: &mut BTreeSet<Cycle>,
) {
    if cols.len() == k && rows.len() == k {
        let (r, c0, cl) = (rows[k - 1], cols[0], cols[k - 1]);
        if base.get(r, cl) && base.get(r, c0) {
            out.insert(Cycle::from_nodes(cols, rows));
        }
        return;
    }
    if cols.len() == rows.len() {
        for c in 0..base.n() {
            if cols.contains(&c) {
                continue;
            }
            if let Some(&r) = rows.last() {
                if !base.get(r, c) {
                    continue;
                }
            }
            cols.push(c);
            sequences(base, k, cols, rows, out);
            cols.pop();
        }
    } else {
        let c = *cols.last().unwrap();
        for r in 0..base.m() {
            if rows.contains(&r) || !base.get(r, c) {
                continue;
            }
            rows.push(r);
            sequences(base, k, cols, rows, out);
            rows.pop();
        }
    }
}

/// Direct expansion of a lifting, entry by entry: block `(i, j)` holds
/// `beta` where `(row - col) mod s == shift`.
pub fn naive_expand(l: &Lifting) -> Vec<Vec<u8>> {
    let s = l.s();
    let (m, n) = (l.base().m(), l.base().n());
    let mut h = vec![vec![0u8; n * s]; m * s];
    for (i, j, mono) in l.assignments() {
        for r in 0..s {
            for c in 0..s {
                if (r + s - c) % s == mono.shift {
                    h[i * s + r][j * s + c] = mono.beta.0;
                }
            }
        }
    }
    h
}
