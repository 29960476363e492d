//! q-ary sum-product decoding in the probability domain, flooding schedule.
//!
//! Check-node updates convolve the incoming distributions over the additive
//! group of GF(2^p) with the Walsh-Hadamard transform, after permuting each
//! message by its edge coefficient.

use crate::gf::{FieldSpec, Gf};
use crate::sim::code::CodeInstance;

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutcome {
    pub word: Vec<Gf>,
    /// The hard decision satisfies every check.
    pub converged: bool,
    /// Message-passing iterations performed; 0 when the channel decision is
    /// already a codeword.
    pub iterations: usize,
}

struct Edge {
    var: usize,
    /// `mul[a] = h·a` for the edge coefficient `h`.
    mul: Vec<u8>,
}

/// Decoder graph of a code, reusable across frames.
pub struct QspaDecoder<'a> {
    code: &'a CodeInstance,
    q: usize,
    edges: Vec<Edge>,
    /// Edge range of each check; edges are stored check by check.
    check_ranges: Vec<(usize, usize)>,
    var_edges: Vec<Vec<usize>>,
}

impl<'a> QspaDecoder<'a> {
    pub fn new(code: &'a CodeInstance) -> Self {
        let field = code.field();
        let mut edges = Vec::new();
        let mut check_ranges = Vec::with_capacity(code.checks().len());
        let mut var_edges = vec![Vec::new(); code.n()];
        for row in code.checks() {
            let start = edges.len();
            for &(var, h) in row {
                var_edges[var].push(edges.len());
                edges.push(Edge {
                    var,
                    mul: field.mul_map(h),
                });
            }
            check_ranges.push((start, edges.len()));
        }
        Self {
            code,
            q: field.q(),
            edges,
            check_ranges,
            var_edges,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        self.code.field()
    }

    /// Decodes from per-symbol probability vectors.
    pub fn decode(&self, likelihoods: &[Vec<f64>], max_iterations: usize) -> DecodeOutcome {
        let q = self.q;
        assert_eq!(
            likelihoods.len(),
            self.code.n(),
            "one distribution per symbol"
        );
        let mut word: Vec<Gf> = likelihoods.iter().map(|p| argmax(p)).collect();
        if self.code.is_codeword(&word) {
            return DecodeOutcome {
                word,
                converged: true,
                iterations: 0,
            };
        }
        let mut v2c = vec![0.0; self.edges.len() * q];
        for (e, edge) in self.edges.iter().enumerate() {
            let dst = &mut v2c[e * q..(e + 1) * q];
            dst.copy_from_slice(&likelihoods[edge.var]);
            normalize(dst);
        }
        let mut c2v = vec![0.0; self.edges.len() * q];
        let mut scratch = CheckScratch::new(q);
        let mut posterior = vec![0.0; q];

        for it in 1..=max_iterations {
            for &(start, end) in &self.check_ranges {
                self.check_update(start, end, &v2c, &mut c2v, &mut scratch);
            }
            for (v, edges) in self.var_edges.iter().enumerate() {
                var_update(q, &likelihoods[v], edges, &c2v, &mut v2c, &mut posterior);
                word[v] = argmax(&posterior);
            }
            if self.code.is_codeword(&word) {
                return DecodeOutcome {
                    word,
                    converged: true,
                    iterations: it,
                };
            }
        }
        DecodeOutcome {
            word,
            converged: false,
            iterations: max_iterations,
        }
    }

    fn check_update(
        &self,
        start: usize,
        end: usize,
        v2c: &[f64],
        c2v: &mut [f64],
        s: &mut CheckScratch,
    ) {
        let q = self.q;
        let deg = end - start;
        s.spectra.resize(deg * q, 0.0);
        for k in 0..deg {
            let e = start + k;
            let spec = &mut s.spectra[k * q..(k + 1) * q];
            // distribution of h·c from that of c
            for (a, &p) in v2c[e * q..(e + 1) * q].iter().enumerate() {
                spec[self.edges[e].mul[a] as usize] = p;
            }
            walsh_hadamard(spec);
        }
        // products over all other edges via prefix and suffix products
        s.prefix.clear();
        s.prefix.resize(q, 1.0);
        s.suffix.resize(deg * q, 0.0);
        let mut acc = vec![1.0; q];
        for k in (0..deg).rev() {
            s.suffix[k * q..(k + 1) * q].copy_from_slice(&acc);
            for (x, y) in acc.iter_mut().zip(&s.spectra[k * q..(k + 1) * q]) {
                *x *= y;
            }
        }
        for k in 0..deg {
            let e = start + k;
            for a in 0..q {
                s.out[a] = s.prefix[a] * s.suffix[k * q + a];
            }
            walsh_hadamard(&mut s.out);
            // out[t] is proportional to P(sum of the other terms = t); the
            // check holds when h·c equals that sum
            let dst = &mut c2v[e * q..(e + 1) * q];
            for (a, slot) in dst.iter_mut().enumerate() {
                *slot = s.out[self.edges[e].mul[a] as usize].max(0.0);
            }
            normalize(dst);
            for a in 0..q {
                s.prefix[a] *= s.spectra[k * q + a];
            }
        }
    }
}

struct CheckScratch {
    spectra: Vec<f64>,
    prefix: Vec<f64>,
    suffix: Vec<f64>,
    out: Vec<f64>,
}

impl CheckScratch {
    fn new(q: usize) -> Self {
        Self {
            spectra: Vec::new(),
            prefix: Vec::new(),
            suffix: Vec::new(),
            out: vec![0.0; q],
        }
    }
}

fn var_update(
    q: usize,
    prior: &[f64],
    edges: &[usize],
    c2v: &[f64],
    v2c: &mut [f64],
    posterior: &mut [f64],
) {
    // prefix products left to right are written into v2c, then multiplied
    // by the running suffix from the right
    let mut acc = prior.to_vec();
    for &e in edges {
        v2c[e * q..(e + 1) * q].copy_from_slice(&acc);
        for (x, y) in acc.iter_mut().zip(&c2v[e * q..(e + 1) * q]) {
            *x *= y;
        }
    }
    posterior.copy_from_slice(&acc);
    if !normalize(posterior) {
        posterior.copy_from_slice(prior);
        normalize(posterior);
    }
    let mut suffix = vec![1.0; q];
    for &e in edges.iter().rev() {
        let msg = &mut v2c[e * q..(e + 1) * q];
        for (x, y) in msg.iter_mut().zip(&suffix) {
            *x *= y;
        }
        if !normalize(msg) {
            msg.copy_from_slice(prior);
            normalize(msg);
        }
        for (x, y) in suffix.iter_mut().zip(&c2v[e * q..(e + 1) * q]) {
            *x *= y;
        }
        // keep the suffix in range on high-degree nodes
        let m = suffix.iter().copied().fold(0.0, f64::max);
        if m > 0.0 {
            suffix.iter_mut().for_each(|x| *x /= m);
        }
    }
}

/// Scales to unit sum; false (and left unchanged) when the sum is not
/// positive and finite.
pub(crate) fn normalize(v: &mut [f64]) -> bool {
    let sum: f64 = v.iter().sum();
    if sum > 0.0 && sum.is_finite() {
        v.iter_mut().for_each(|x| *x /= sum);
        true
    } else {
        false
    }
}

fn argmax(p: &[f64]) -> Gf {
    let mut best = 0;
    for (a, &x) in p.iter().enumerate() {
        if x > p[best] {
            best = a;
        }
    }
    Gf(best as u8)
}

/// Unnormalized in-place Walsh-Hadamard transform; applying it twice
/// multiplies by the length.
pub fn walsh_hadamard(v: &mut [f64]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Check-to-variable message for edge `target` of a check with the given
/// coefficients, by direct O(q^2) convolution. Test oracle for the
/// transform-based update.
#[cfg(test)]
pub(crate) fn direct_check_message(
    field: &FieldSpec,
    coeffs: &[Gf],
    messages: &[Vec<f64>],
    target: usize,
) -> Vec<f64> {
    let q = field.q();
    let mut dist = vec![0.0; q];
    dist[0] = 1.0;
    for (k, (&h, msg)) in coeffs.iter().zip(messages).enumerate() {
        if k == target {
            continue;
        }
        let mut next = vec![0.0; q];
        for (t, &pt) in dist.iter().enumerate() {
            for (a, &pa) in msg.iter().enumerate() {
                next[t ^ field.mul(h, Gf(a as u8)).value()] += pt * pa;
            }
        }
        dist = next;
    }
    let h = coeffs[target];
    let mut out: Vec<f64> = (0..q)
        .map(|a| dist[field.mul(h, Gf(a as u8)).value()])
        .collect();
    normalize(&mut out);
    out
}
