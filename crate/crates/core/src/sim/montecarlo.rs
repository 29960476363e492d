//! Monte-Carlo block-error-rate estimation.
//!
//! Frame `f` at SNR point `k` draws all of its randomness from a generator
//! seeded by `(seed, k, f)`, so frames can run in parallel and the totals
//! match a sequential run exactly.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::sim::code::CodeInstance;
use crate::sim::decoder::QspaDecoder;
use crate::sim::modem::{modulate_and_transmit, symbol_likelihoods, Modulation};

/// Frames simulated between stopping-rule checks.
const BATCH: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub modulation: Modulation,
    /// Es/N0 points in dB; `inf` is allowed.
    pub snr_db: Vec<f64>,
    pub max_frames: usize,
    pub max_errors: usize,
    pub max_iterations: usize,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        self.modulation.validate()?;
        if self.max_frames == 0 {
            return Err(Error::InvalidParameter(
                "max_frames must be at least 1".into(),
            ));
        }
        if self.max_errors == 0 {
            return Err(Error::InvalidParameter(
                "max_errors must be at least 1".into(),
            ));
        }
        if self.snr_db.iter().any(|s| s.is_nan()) {
            return Err(Error::InvalidParameter("SNR point is NaN".into()));
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: SimConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnrPoint {
    pub snr_db: f64,
    pub frames: usize,
    pub errors: usize,
    pub bler: f64,
    /// 95% Wilson score interval for the BLER.
    pub ci_low: f64,
    pub ci_high: f64,
    pub avg_iterations: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub points: Vec<SnrPoint>,
}

impl SimResult {
    /// One line per SNR point.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# snr_db frames errors bler ci_low ci_high avg_iterations\n");
        for p in &self.points {
            writeln!(
                out,
                "{} {} {} {:.6e} {:.6e} {:.6e} {:.4}",
                p.snr_db, p.frames, p.errors, p.bler, p.ci_low, p.ci_high, p.avg_iterations
            )
            .unwrap();
        }
        out
    }
}

/// 95% Wilson score interval for `errors` out of `frames`.
pub fn wilson_interval(errors: usize, frames: usize) -> (f64, f64) {
    if frames == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = frames as f64;
    let p = errors as f64 / n;
    let denom = 1.0 + Z * Z / n;
    let center = (p + Z * Z / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + Z * Z / (4.0 * n * n)).sqrt() / denom;
    let lo = if errors == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let hi = if errors == frames {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lo, hi)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of frame `frame` at SNR index `point`.
pub fn frame_seed(seed: u64, point: usize, frame: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ point as u64) ^ frame as u64)
}

/// Outcome of one simulated frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameOutcome {
    pub block_error: bool,
    pub iterations: usize,
}

/// Encodes random information, transmits it and decodes.
pub fn simulate_frame(
    code: &CodeInstance,
    decoder: &QspaDecoder<'_>,
    cfg: &SimConfig,
    snr_db: f64,
    rng: &mut ChaCha8Rng,
) -> Result<FrameOutcome> {
    let q = code.field().q() as u64;
    let p = code.field().degree() as usize;
    let info: Vec<Gf> = (0..code.k())
        .map(|_| Gf(rng.random_range(0..q) as u8))
        .collect();
    let word = code.encode(&info)?;
    let rx = modulate_and_transmit(&word, p, cfg.modulation, snr_db, rng)?;
    let probs = symbol_likelihoods(&rx, p, cfg.modulation, snr_db);
    let out = decoder.decode(&probs, cfg.max_iterations);
    Ok(FrameOutcome {
        block_error: out.word != word,
        iterations: out.iterations,
    })
}

/// Per SNR point, simulates frames until `max_frames` frames or
/// `max_errors` block errors.
pub fn run_monte_carlo(code: &CodeInstance, cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    let bits = code.n() * code.field().degree() as usize;
    let b = cfg.modulation.bits_per_symbol();
    if !bits.is_multiple_of(b) {
        return Err(Error::InvalidParameter(format!(
            "codeword of {bits} bits does not fill whole {} symbols",
            cfg.modulation
        )));
    }
    let decoder = QspaDecoder::new(code);
    let mut points = Vec::with_capacity(cfg.snr_db.len());
    for (k, &snr) in cfg.snr_db.iter().enumerate() {
        let (mut frames, mut errors, mut iterations) = (0usize, 0usize, 0usize);
        'point: while frames < cfg.max_frames && errors < cfg.max_errors {
            let batch_end = (frames + BATCH).min(cfg.max_frames);
            let outcomes: Vec<FrameOutcome> = (frames..batch_end)
                .into_par_iter()
                .map(|f| {
                    let mut rng = ChaCha8Rng::seed_from_u64(frame_seed(cfg.seed, k, f));
                    simulate_frame(code, &decoder, cfg, snr, &mut rng)
                })
                .collect::<Result<_>>()?;
            for o in outcomes {
                frames += 1;
                iterations += o.iterations;
                if o.block_error {
                    errors += 1;
                    if errors >= cfg.max_errors {
                        break 'point;
                    }
                }
            }
        }
        let (ci_low, ci_high) = wilson_interval(errors, frames);
        points.push(SnrPoint {
            snr_db: snr,
            frames,
            errors,
            bler: errors as f64 / frames as f64,
            ci_low,
            ci_high,
            avg_iterations: iterations as f64 / frames as f64,
        });
    }
    Ok(SimResult { points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(0, 100);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && hi > 0.5);
        assert!((0.5 - lo - (hi - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn config_toml() {
        let text = r#"
modulation = "qam16"
snr_db = [1.0, 2.5, inf]
max_frames = 100
max_errors = 10
max_iterations = 30
seed = 4
"#;
        let cfg = SimConfig::from_toml(text).unwrap();
        assert_eq!(cfg.modulation, Modulation::Qam(16));
        assert_eq!(cfg.snr_db[2], f64::INFINITY);
        assert_eq!(SimConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
        assert!(SimConfig::from_toml(&text.replace("100", "0")).is_err());
        assert!(SimConfig::from_toml(&text.replace("qam16", "qam8")).is_err());
        assert!(SimConfig::from_toml("modulation = \"bpsk\"").is_err());
    }

    #[test]
    fn frame_seeds_differ() {
        assert_ne!(frame_seed(1, 0, 0), frame_seed(1, 0, 1));
        assert_ne!(frame_seed(1, 0, 1), frame_seed(1, 1, 0));
        assert_eq!(frame_seed(9, 2, 3), frame_seed(9, 2, 3));
    }
}
