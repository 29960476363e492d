//! Log/exp-table arithmetic in GF(16) and the circulant picture of the
//! ring GF(q)[x]/(x^s - 1).

use nbqc::{FieldSpec, Gf, Monomial, RingElement};

fn main() -> nbqc::Result<()> {
    let f = FieldSpec::new(4)?;
    println!(
        "GF({}) with primitive polynomial {:#x}",
        f.q(),
        f.primitive_poly()
    );
    let (a, b) = (Gf(7), Gf(12));
    println!("{a} + {b} = {}", f.add(a, b));
    println!("{a} * {b} = {}", f.mul(a, b));
    println!("{a} / {b} = {}", f.div(a, b)?);
    println!(
        "alpha^k for k = 0..15: {:?}",
        (0..15).map(|k| f.alpha_pow(k).value()).collect::<Vec<_>>()
    );

    // (1 + 2x) * (3x^2) in GF(4)[x]/(x^3 - 1)
    let g = FieldSpec::new(2)?;
    let u = RingElement::from_coeffs(vec![Gf(1), Gf(2), Gf(0)]);
    let v = Monomial::new(Gf(3), 2).to_ring(3);
    let w = u.mul(&v, &g)?;
    println!("({u}) * ({v}) = {w}");
    println!("circulant of the product:\n{:?}", w.circulant());
    Ok(())
}
