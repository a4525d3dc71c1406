//! Witness, AD negativity and mediator non-classicality of the symmetric
//! network as the dephasing on B and C grows.

use qmediator::circuits::{ExperimentConfig, Network};
use qmediator::experiment::sweep;

fn main() -> qmediator::Result<()> {
    let cfg = ExperimentConfig::new(Network::Symmetric);
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 * 0.05).collect();
    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>10}",
        "p", "W(frames)", "W(dense)", "N(AD)", "ncl(B)"
    );
    for r in sweep(&cfg, &grid)? {
        println!(
            "{:>5.2} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            r.p,
            r.witness_heisenberg.unwrap_or(f64::NAN),
            r.witness_density,
            r.negativity_ad,
            r.nonclassicality_b.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
