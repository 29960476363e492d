//! Cycles of a base matrix up to a depth, with their ACE values, and the
//! determinant test that decides whether a lifting eliminates them.

use nbqc::{BaseMatrix, FieldSpec, Gf, Lifting, Monomial};

fn main() -> nbqc::Result<()> {
    let base = BaseMatrix::from_rows(&[vec![1, 1, 0, 1], vec![1, 0, 1, 1], vec![0, 1, 1, 1]])?;
    let cycles = base.all_cycles(6, None).cycles;
    for c in &cycles {
        println!("length {} ace {}: {c}", c.len(), base.cycle_ace(c));
    }

    // Every edge 1*x^0 leaves every cycle in place; moving one shift breaks
    // the 4-cycles through that edge.
    let field = FieldSpec::new(2)?;
    let mut lifting = Lifting::identity(base.clone(), 5, field)?;
    println!("identity lifting: ace {}", lifting.ace_vector(&cycles, 6)?);
    lifting.set(0, 0, Monomial::new(Gf(1), 2))?;
    for c in cycles.iter().filter(|c| c.contains_edge((0, 0))) {
        println!("{c}: det = {}", lifting.cycle_determinant(c)?);
    }
    println!(
        "after moving edge (0, 0): ace {}",
        lifting.ace_vector(&cycles, 6)?
    );
    Ok(())
}
