//! Writes a random lifting in both the compact and the scalar form and reads
//! it back.

use nbqc::{greedy_lift, BaseMatrix, ConstructionConfig, NonBinaryAlist};

fn main() -> nbqc::Result<()> {
    let base = BaseMatrix::column_regular(3, 6, 2)?;
    let mut cfg = ConstructionConfig::new(4, 8, 6, 11);
    cfg.trials_per_edge = 5;
    let (lifting, _) = greedy_lift(&base, &cfg)?;
    let file = NonBinaryAlist::from_lifting(lifting);
    let text = file.to_text(true);
    print!("{text}");
    let back: NonBinaryAlist = text.parse()?;
    assert_eq!(back, file);
    println!("# parsed back identical; {} nonzeros", back.matrix().nnz());
    Ok(())
}
