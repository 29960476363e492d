//! The 2x3 lifting H(x) = [[0, x^2, 2x], [1, 0, 3x^2]] over GF(4) with s = 3:
//! scalar expansion, code dimension and serialized form.

use nbqc::sim::build_code;
use nbqc::{BaseMatrix, FieldSpec, Gf, Lifting, Monomial, NonBinaryAlist};

fn main() -> nbqc::Result<()> {
    let base = BaseMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 1]])?;
    let m = |b: u8, z: usize| Monomial::new(Gf(b), z);
    let lifting = Lifting::from_assignments(
        base,
        3,
        FieldSpec::new(2)?,
        &[
            (0, 1, m(1, 2)),
            (0, 2, m(2, 1)),
            (1, 0, m(1, 0)),
            (1, 2, m(3, 2)),
        ],
    )?;
    println!("H(x) =\n{}", lifting.poly_matrix());
    println!("expanded H =");
    for row in lifting.expand().to_codes() {
        println!("  {row:?}");
    }
    let code = build_code(&lifting)?;
    println!("N = {}, rank = {}, K = {}", code.n(), code.rank(), code.k());
    print!("{}", NonBinaryAlist::from_lifting(lifting).to_text(false));
    Ok(())
}
