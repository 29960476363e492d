//! Rate and minimum-distance bounds for column-weight-2 bases with four and
//! eight rows, lifted to the same length 4620.

use nbqc::analysis::{Analysis, DEFAULT_FLOOR_THRESHOLD};
use nbqc::{distance_upper_bound, rate_lower_bound, BaseMatrix};

fn main() -> nbqc::Result<()> {
    for (m, n, s) in [(4, 33, 140), (8, 66, 70)] {
        let base = BaseMatrix::column_regular(m, n, 2)?;
        let rate = rate_lower_bound(&base);
        println!(
            "{m}x{n}, s={s}: N = {}, rate >= {rate}, K >= {}, D <= {}",
            n * s,
            (rate.to_f64() * (n * s) as f64).round(),
            distance_upper_bound(2, m)?
        );
        let a = Analysis::analyze_base(&base, 4, None, DEFAULT_FLOOR_THRESHOLD)?;
        println!("  floor-prone: {:?}", a.floor_prone());
    }
    Ok(())
}
