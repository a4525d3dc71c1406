//! Products, commutators and norms of Pauli-operator sums.

use num_complex::Complex64;
use qmediator::pauli::{PauliSum, PauliTerm};

fn main() -> qmediator::Result<()> {
    let xz = PauliTerm::parse("q_xA q_zB", 2)?;
    let zx = PauliTerm::parse("q_zA q_xB", 2)?;
    println!("({xz}) ({zx}) = {}", xz.mul(&zx)?);
    println!("commute: {}", xz.commutes_with(&zx));

    let qx = PauliSum::<Complex64>::parse("0.6 q_xA", 1)?;
    let qz = PauliSum::<Complex64>::parse("q_zA", 1)?;
    let c = qx.commutator(&qz)?;
    println!("[{qx}, {qz}] = {c}, norm {}", c.operator_norm()?);

    // Factor order on input is free; output is canonical.
    let w = PauliSum::<Complex64>::parse("q_zD q_xA + q_xC q_zB", 4)?;
    println!("canonical form: {w}");
    Ok(())
}
