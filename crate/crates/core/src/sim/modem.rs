//! Gray-mapped BPSK/QAM modulation, the AWGN channel and symbol-wise
//! demapping to GF(q) likelihoods.
//!
//! Field symbols are packed most-significant-bit first, in codeword order.
//! Constellations are normalized to unit average energy; the channel adds
//! complex Gaussian noise of total variance `N0 = 10^(-Es/N0 / 10)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Gf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Modulation {
    Bpsk,
    /// Square M-QAM, M a power of 4.
    Qam(usize),
}

impl Modulation {
    pub fn bits_per_symbol(self) -> usize {
        match self {
            Modulation::Bpsk => 1,
            Modulation::Qam(m) => m.trailing_zeros() as usize,
        }
    }

    pub fn validate(self) -> Result<()> {
        match self {
            Modulation::Bpsk => Ok(()),
            Modulation::Qam(m) if m >= 4 && m.is_power_of_two() && m.trailing_zeros() % 2 == 0 => {
                Ok(())
            }
            Modulation::Qam(m) => Err(Error::InvalidParameter(format!(
                "QAM order {m} is not a power of 4"
            ))),
        }
    }

    /// Constellation points indexed by their bit label (MSB first).
    pub fn constellation(self) -> Vec<Complex64> {
        match self {
            Modulation::Bpsk => vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
            Modulation::Qam(m) => {
                let k = self.bits_per_symbol() / 2;
                let levels = 1usize << k;
                let scale = (3.0 / (2.0 * (m as f64 - 1.0))).sqrt();
                let amp = |g: usize| (2.0 * gray_decode(g) as f64 - (levels as f64 - 1.0)) * scale;
                (0..m)
                    .map(|label| Complex64::new(amp(label >> k), amp(label & (levels - 1))))
                    .collect()
            }
        }
    }
}

fn gray_decode(mut g: usize) -> usize {
    let mut b = g;
    while g > 0 {
        g >>= 1;
        b ^= g;
    }
    b
}

impl fmt::Display for Modulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulation::Bpsk => write!(f, "bpsk"),
            Modulation::Qam(m) => write!(f, "qam{m}"),
        }
    }
}

impl FromStr for Modulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let m = match lower.as_str() {
            "bpsk" => Modulation::Bpsk,
            "qpsk" => Modulation::Qam(4),
            other => other
                .strip_prefix("qam")
                .or_else(|| other.strip_suffix("-qam"))
                .and_then(|n| n.parse().ok())
                .map(Modulation::Qam)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown modulation '{s}'")))?,
        };
        m.validate()?;
        Ok(m)
    }
}

impl TryFrom<String> for Modulation {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Modulation> for String {
    fn from(m: Modulation) -> String {
        m.to_string()
    }
}

/// Noise variance `N0` for unit-energy symbols at the given Es/N0 in dB.
pub fn noise_variance(es_n0_db: f64) -> f64 {
    10f64.powf(-es_n0_db / 10.0)
}

/// Field symbols of `bits_per_field_symbol` bits each, MSB first.
pub fn pack_bits(symbols: &[Gf], bits_per_field_symbol: usize) -> Vec<u8> {
    symbols
        .iter()
        .flat_map(|s| {
            (0..bits_per_field_symbol)
                .rev()
                .map(move |k| (s.0 >> k) & 1)
        })
        .collect()
}

pub fn modulate(bits: &[u8], modulation: Modulation) -> Result<Vec<Complex64>> {
    let b = modulation.bits_per_symbol();
    if !bits.len().is_multiple_of(b) {
        return Err(Error::InvalidParameter(format!(
            "{} bits do not fill whole {modulation} symbols",
            bits.len()
        )));
    }
    let points = modulation.constellation();
    Ok(bits
        .chunks(b)
        .map(|chunk| points[chunk.iter().fold(0usize, |acc, &x| acc << 1 | x as usize)])
        .collect())
}

/// Adds complex Gaussian noise; an infinite Es/N0 leaves the samples as is.
pub fn add_awgn<R: Rng + ?Sized>(samples: &mut [Complex64], es_n0_db: f64, rng: &mut R) {
    if es_n0_db == f64::INFINITY {
        return;
    }
    let sigma = (noise_variance(es_n0_db) / 2.0).sqrt();
    for x in samples {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *x += Complex64::new(re * sigma, im * sigma);
    }
}

/// Packs, modulates and sends a codeword through the AWGN channel.
pub fn modulate_and_transmit<R: Rng + ?Sized>(
    codeword: &[Gf],
    bits_per_field_symbol: usize,
    modulation: Modulation,
    es_n0_db: f64,
    rng: &mut R,
) -> Result<Vec<Complex64>> {
    let mut samples = modulate(&pack_bits(codeword, bits_per_field_symbol), modulation)?;
    add_awgn(&mut samples, es_n0_db, rng);
    Ok(samples)
}

fn log_sum_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// Per-symbol probability vectors over GF(2^p), one for each of the
/// `samples.len() · bits_per_symbol / p` field symbols.
///
/// Each constellation observation contributes, for every field symbol it
/// overlaps, the Gaussian likelihood marginalized over the label bits that
/// belong to other field symbols.
pub fn symbol_likelihoods(
    samples: &[Complex64],
    bits_per_field_symbol: usize,
    modulation: Modulation,
    es_n0_db: f64,
) -> Vec<Vec<f64>> {
    let p = bits_per_field_symbol;
    let b = modulation.bits_per_symbol();
    let q = 1usize << p;
    let points = modulation.constellation();
    let n_field = samples.len() * b / p;
    let n0 = noise_variance(es_n0_db);
    let mut loglik = vec![vec![0.0f64; q]; n_field];

    for (t, &y) in samples.iter().enumerate() {
        let label_ll: Vec<f64> = points
            .iter()
            .map(|&x| {
                let d = (y - x).norm_sqr();
                if n0 > 0.0 {
                    -d / n0
                } else if d < 1e-18 {
                    0.0
                } else {
                    f64::NEG_INFINITY
                }
            })
            .collect();
        let (lo, hi) = (t * b, (t + 1) * b);
        let first = lo / p;
        let last = ((hi - 1) / p).min(n_field.saturating_sub(1));
        for v in first..=last {
            let start = lo.max(v * p);
            let end = hi.min((v + 1) * p);
            let w = end - start;
            let mask = (1usize << w) - 1;
            let label_shift = b - (start - lo) - w;
            let sym_shift = p - (start - v * p) - w;
            let mut marginal = vec![f64::NEG_INFINITY; 1 << w];
            for (label, &ll) in label_ll.iter().enumerate() {
                let sub = (label >> label_shift) & mask;
                marginal[sub] = log_sum_exp(marginal[sub], ll);
            }
            for (a, slot) in loglik[v].iter_mut().enumerate() {
                *slot += marginal[(a >> sym_shift) & mask];
            }
        }
    }

    loglik
        .into_iter()
        .map(|ll| {
            let max = ll.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if max == f64::NEG_INFINITY {
                return vec![1.0 / q as f64; q];
            }
            let mut probs: Vec<f64> = ll.iter().map(|&l| (l - max).exp()).collect();
            let sum: f64 = probs.iter().sum();
            probs.iter_mut().for_each(|x| *x /= sum);
            probs
        })
        .collect()
}
