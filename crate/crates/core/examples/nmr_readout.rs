//! Emulated antiphase readout after the Bell stage, after the transfer, and
//! after the transfer with C fully dephased.

use qmediator::circuits::{build_staged, build_staged_with_channel, GateOp, StagedOptions, A, B};
use qmediator::density::{run_final_density, DensityMatrix};
use qmediator::detect::{antiphase_amplitudes, MultipletReport};
use qmediator::pauli::BasisState;

fn show(label: &str, r: &MultipletReport) {
    let classes: Vec<String> = r
        .classification
        .iter()
        .map(|(s, c)| format!("{s}: {c}"))
        .collect();
    println!("{label:<12} {}", classes.join(", "));
}

fn main() -> qmediator::Result<()> {
    let init = DensityMatrix::basis(&"1100".parse::<BasisState>()?)?;
    let singlet = init
        .apply_gate(&GateOp::H(A))?
        .apply_gate(&GateOp::cnot(A, B))?;
    show("singlet", &antiphase_amplitudes(&singlet, A)?);
    let moved = run_final_density(&build_staged(8, None, StagedOptions::default())?, &init)?;
    show("transferred", &antiphase_amplitudes(&moved, A)?);
    let dephased = run_final_density(
        &build_staged_with_channel(8, 0.5, StagedOptions::default())?,
        &init,
    )?;
    let r = antiphase_amplitudes(&dephased, A)?;
    show("dephased", &r);
    if let Some(b) = r.amplitudes("B", "A") {
        println!(
            "B multiplet against A: antiphase {:.4}, in-phase {:.4}",
            b.antiphase, b.inphase
        );
    }
    Ok(())
}
