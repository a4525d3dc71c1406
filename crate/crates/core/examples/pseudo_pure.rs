//! The witness on a pseudo-pure input is the pure-state value scaled by the
//! polarisation.

use qmediator::circuits::{build_symmetric, A, D};
use qmediator::density::{run_final_density, DensityMatrix};
use qmediator::experiment::witness_density;
use qmediator::heisenberg::WitnessAxes;
use qmediator::pauli::BasisState;

fn main() -> qmediator::Result<()> {
    let circuit = build_symmetric(None)?;
    for eps in [0.0, 1e-5, 0.3, 1.0] {
        let rho = run_final_density(
            &circuit,
            &DensityMatrix::pseudo_pure(eps, &BasisState::zeros(4))?,
        )?;
        println!(
            "eps {eps:<7} witness {:.8}",
            witness_density(&rho, A, D, WitnessAxes::XZ_ZX)?
        );
    }
    Ok(())
}
