//! Descriptor tables of the symmetric network (clean and with a formal
//! dephasing factor) and of the asymmetric network.

use qmediator::circuits::{build_asymmetric, build_symmetric};
use qmediator::heisenberg::{render_table, run_network_frames, run_network_frames_symbolic};

fn main() -> qmediator::Result<()> {
    println!(
        "symmetric network\n{}",
        render_table(&run_network_frames(&build_symmetric(None)?)?)
    );
    let symbolic = run_network_frames_symbolic(&build_symmetric(Some(0.0))?)?;
    println!(
        "symmetric network, dephased B and C\n{}",
        render_table(&symbolic)
    );
    println!(
        "asymmetric network\n{}",
        render_table(&run_network_frames(&build_asymmetric()?)?)
    );
    Ok(())
}
