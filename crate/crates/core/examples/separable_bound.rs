//! Random product states and their mixtures never push <XZ> + <ZX> past 1;
//! a Bell pair reaches 2.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qmediator::density::DensityMatrix;
use qmediator::pauli::PauliSum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn qubit<R: Rng>(rng: &mut R) -> DMatrix<Complex64> {
    let (theta, phi): (f64, f64) = (
        rng.gen_range(0.0..std::f64::consts::PI),
        rng.gen_range(0.0..6.3),
    );
    let psi = [
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ];
    DMatrix::from_fn(2, 2, |i, j| psi[i] * psi[j].conj())
}

fn main() -> qmediator::Result<()> {
    let obs = PauliSum::<Complex64>::parse("q_xA q_zB + q_zA q_xB", 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut best = f64::NEG_INFINITY;
    for _ in 0..5000 {
        let rho = DensityMatrix::from_matrix(2, qubit(&mut rng).kronecker(&qubit(&mut rng)))?;
        best = best.max(rho.expectation(&obs)?);
    }
    println!("largest value over 5000 product states: {best:.6}");

    // (|0+> + |1->)/sqrt2 saturates the witness
    let psi: Vec<Complex64> = [0.5, 0.5, 0.5, -0.5]
        .iter()
        .map(|&a| Complex64::new(a, 0.0))
        .collect();
    let bell = DensityMatrix::from_pure(2, &psi)?;
    println!("entangled reference: {:.6}", bell.expectation(&obs)?);
    Ok(())
}
