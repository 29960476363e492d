//! Non-binary quasi-cyclic LDPC codes: greedy ACE-driven lifting of binary
//! base matrices, code analysis, and a desk-scale AWGN simulation harness.

pub mod alist;
pub mod analysis;
pub mod base;
pub mod cli;
pub mod error;
pub mod gf;
pub mod gfmat;
pub mod lifter;
pub mod poly;
pub mod sim;

pub use alist::NonBinaryAlist;
pub use analysis::Analysis;
pub use base::{AceValue, AceVector, BaseMatrix, Cycle, Rational, TannerGraph};
pub use error::{Error, Result};
pub use gf::{FieldSpec, Gf};
pub use gfmat::GfMatrix;
pub use lifter::{
    distance_upper_bound, greedy_lift, rate_lower_bound, ConstructionConfig, ConstructionReport,
    InitialAssignment, Lifting,
};
pub use poly::{Monomial, PolyMatrix, RingElement};
