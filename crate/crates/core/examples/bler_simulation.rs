//! Block error rate of a greedy-lifted GF(16) code against the all-1*x^0
//! lifting of the same 4x16 base, BPSK over AWGN.
//!
//! Usage: `cargo run --release --example bler_simulation [frames]`

use nbqc::sim::{build_code, run_monte_carlo, Modulation, SimConfig};
use nbqc::{greedy_lift, BaseMatrix, ConstructionConfig, FieldSpec, Lifting};

const BASE: &str = include_str!("../data/base_4x16.txt");

fn main() -> nbqc::Result<()> {
    let frames = std::env::args()
        .nth(1)
        .map_or(Ok(2000), |s| s.parse())
        .expect("frame count");
    let base: BaseMatrix = BASE.parse()?;
    let (greedy, report) = greedy_lift(&base, &ConstructionConfig::new(12, 16, 6, 1))?;
    println!(
        "greedy lifting: ace {}, girth {:?}",
        report.final_ace, report.girth
    );
    let trivial = Lifting::identity(base, 12, FieldSpec::new(4)?)?;
    let cfg = SimConfig {
        modulation: Modulation::Bpsk,
        snr_db: vec![3.0, 4.0, 5.0, 6.0],
        max_frames: frames,
        max_errors: frames,
        max_iterations: 50,
        seed: 1,
    };
    for (name, lifting) in [("greedy", &greedy), ("all-1*x^0", &trivial)] {
        let code = build_code(lifting)?;
        println!("{name}: N = {}, K = {}", code.n(), code.k());
        print!("{}", run_monte_carlo(&code, &cfg)?.to_text());
    }
    Ok(())
}
