//! Moving a Bell pair from AB to AD with n-th roots of SWAP, compared with
//! the two-SWAP asymmetric network.

use qmediator::circuits::{build_asymmetric, build_staged, StagedOptions, A, D};
use qmediator::density::{run_final_density, DensityMatrix};
use qmediator::experiment::negativity_pair;
use qmediator::pauli::BasisState;

fn main() -> qmediator::Result<()> {
    let init = DensityMatrix::basis(&"1100".parse::<BasisState>()?)?;
    let reference = run_final_density(&build_asymmetric()?, &init)?.partial_trace(&[A, D])?;
    for stages in [1, 2, 4, 8, 16] {
        let rho = run_final_density(
            &build_staged(stages, None, StagedOptions::default())?,
            &init,
        )?;
        let ad = rho.partial_trace(&[A, D])?;
        println!(
            "{stages:>2} stages: N(AD) = {:.6}, distance to two-SWAP result {:.1e}",
            negativity_pair(&rho, A, D)?,
            ad.max_abs_diff(&reference)
        );
    }
    Ok(())
}
