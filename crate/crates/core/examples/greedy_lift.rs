//! Greedy ACE lifting of a 3x6 base over GF(16) with 16x16 circulants.
//!
//! Usage: `cargo run --release --example greedy_lift [seed]`

use nbqc::sim::build_code;
use nbqc::{greedy_lift, BaseMatrix, ConstructionConfig};

const BASE: &str = include_str!("../data/base_3x6.txt");

fn main() -> nbqc::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .map_or(Ok(1), |s| s.parse())
        .expect("seed is an integer");
    let base: BaseMatrix = BASE.parse()?;
    let cfg = ConstructionConfig::new(16, 16, 8, seed);
    let (lifting, report) = greedy_lift(&base, &cfg)?;
    println!(
        "initial ace {}, final ace {}",
        report.initial_ace, report.final_ace
    );
    for l in &report.per_length {
        println!(
            "length {}: {} eliminated, {} left",
            l.length, l.eliminated, l.uneliminated
        );
    }
    println!("girth of the expanded graph: {:?}", report.girth);
    for line in report.log_lines() {
        println!("  {line}");
    }
    let code = build_code(&lifting)?;
    println!("N = {}, K = {}", code.n(), code.k());
    println!("H(x) =\n{}", lifting.poly_matrix());
    Ok(())
}
