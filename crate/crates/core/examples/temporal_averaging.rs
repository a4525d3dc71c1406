//! Dephasing C by averaging over patterns of Z insertions: the transfer to D
//! is suppressed while A stays entangled with B.

use qmediator::circuits::{ExperimentConfig, Network, PatternMode};
use qmediator::experiment::run_staged;

fn main() -> qmediator::Result<()> {
    let mut cfg = ExperimentConfig::new(Network::Staged);
    cfg.patterns = PatternMode::Exhaustive;
    cfg.seed = 1;
    let report = run_staged(&cfg)?;
    for v in &report.variants {
        println!(
            "{:<10} patterns {:>4}: N(AD) {:.3e}  N(AB) {:.4}  <ZaZb> {:+.4}  <XaYb> {:+.4}",
            v.name,
            v.patterns,
            v.negativity_ad.value,
            v.negativity_ab.value,
            v.correlations.za_zb,
            v.correlations.xa_yb
        );
    }
    Ok(())
}
