//! Desk-scale verification: encoding, modulation, AWGN, q-ary belief
//! propagation and Monte-Carlo block-error-rate estimation.

pub mod code;
pub mod decoder;
pub mod modem;
pub mod montecarlo;

pub use code::{build_code, CodeInstance};
pub use decoder::{DecodeOutcome, QspaDecoder};
pub use modem::{modulate_and_transmit, symbol_likelihoods, Modulation};
pub use montecarlo::{run_monte_carlo, SimConfig, SimResult, SnrPoint};
