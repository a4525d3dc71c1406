//! End-to-end experiment runners shared by the CLI and the examples.

use crate::circuits::{
    build_asymmetric, build_staged, build_staged_with_channel, build_symmetric,
    exhaustive_patterns, sample_patterns, staged_template, Circuit, ConfigDocument,
    ExperimentConfig, Network, PSetting, PatternMode, A, B, C, D,
};
use crate::density::{run_final_density, run_network_density, temporal_average, DensityMatrix};
use crate::detect::{antiphase_amplitudes_with_threshold, MultipletReport};
use crate::error::{Error, Result};
use crate::heisenberg::{
    nonclassicality_degree, run_network_frames, witness_frames, DescriptorFrame, WitnessAxes,
};
use crate::pauli::{BasisState, Pauli, PauliSum, PauliWord};
use rayon::prelude::*;
use serde::Serialize;

/// Largest pattern population the exhaustive mode will enumerate.
pub const EXHAUSTIVE_CAP: u128 = 1_000_000;

/// Sample count used for the sampled variant when exhaustive mode is chosen.
pub const DEFAULT_SAMPLE_COUNT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Heisenberg,
    Density,
}

/// A number together with the engine that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tagged {
    pub engine: Engine,
    pub value: f64,
}

impl Tagged {
    pub fn heisenberg(value: f64) -> Self {
        Tagged {
            engine: Engine::Heisenberg,
            value,
        }
    }

    pub fn density(value: f64) -> Self {
        Tagged {
            engine: Engine::Density,
            value,
        }
    }
}

/// `q_a(p1) q_b(p2) + q_c(p1) q_d(p2)` as a physical observable.
pub fn witness_observable(
    n: usize,
    probe1: usize,
    probe2: usize,
    axes: WitnessAxes,
) -> Result<PauliSum> {
    let mut out = PauliSum::zero(n);
    for (a1, a2) in axes.pairs() {
        let mut letters = vec![Pauli::I; n];
        letters[probe1] = a1.pauli();
        letters[probe2] = a2.pauli();
        out = out.add(&PauliSum::from_term(&crate::pauli::PauliTerm::new(
            crate::pauli::Phase::ONE,
            PauliWord::from_letters(letters),
        )))?;
    }
    Ok(out)
}

/// Witness on the density engine.
pub fn witness_density(
    rho: &DensityMatrix,
    probe1: usize,
    probe2: usize,
    axes: WitnessAxes,
) -> Result<f64> {
    rho.expectation(&witness_observable(rho.n(), probe1, probe2, axes)?)
}

/// Witness on the descriptor engine for the pseudo-pure mixture
/// `(1-eps) 1/2^n + eps |bits><bits|`: the mixed part is averaged over every
/// basis state.
pub fn witness_frames_pseudo_pure(
    frame: &DescriptorFrame,
    epsilon: f64,
    bits: &BasisState,
    probe1: usize,
    probe2: usize,
    axes: WitnessAxes,
) -> Result<f64> {
    let pure = witness_frames(frame, bits, probe1, probe2, axes)?;
    if epsilon == 1.0 {
        return Ok(pure);
    }
    let n = frame.n();
    let mut mixed = 0.0;
    for idx in 0..1usize << n {
        let b = BasisState::from_bits((0..n).map(|q| (idx >> (n - 1 - q)) & 1 == 1).collect());
        mixed += witness_frames(frame, &b, probe1, probe2, axes)?;
    }
    mixed /= (1usize << n) as f64;
    Ok((1.0 - epsilon) * mixed + epsilon * pure)
}

/// AD negativity of the reduced probe state.
pub fn negativity_pair(rho: &DensityMatrix, a: usize, b: usize) -> Result<f64> {
    rho.partial_trace(&[a, b])?.negativity(&[0])
}

fn initial_state(cfg: &ExperimentConfig) -> Result<DensityMatrix> {
    DensityMatrix::pseudo_pure(cfg.epsilon, &cfg.initial_bits)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub witness_heisenberg: Option<f64>,
    pub witness_density: f64,
    pub negativity_ad: f64,
    pub nonclassicality_b: Option<f64>,
    pub nonclassicality_c: Option<f64>,
}

fn sweep_point(cfg: &ExperimentConfig, p: f64) -> Result<SweepRow> {
    let init = initial_state(cfg)?;
    match cfg.network {
        Network::Symmetric => {
            let circuit = build_symmetric(Some(p))?;
            let frames = run_network_frames(&circuit)?;
            let last = frames.last().expect("final frame");
            let rho = run_final_density(&circuit, &init)?;
            Ok(SweepRow {
                p,
                witness_heisenberg: Some(witness_frames_pseudo_pure(
                    last,
                    cfg.epsilon,
                    &cfg.initial_bits,
                    A,
                    D,
                    cfg.axes,
                )?),
                witness_density: witness_density(&rho, A, D, cfg.axes)?,
                negativity_ad: negativity_pair(&rho, A, D)?,
                nonclassicality_b: Some(nonclassicality_degree(last, B)?),
                nonclassicality_c: Some(nonclassicality_degree(last, C)?),
            })
        }
        Network::Staged => {
            let circuit = build_staged_with_channel(cfg.stages, p, cfg.staged)?;
            let rho = run_final_density(&circuit, &init)?;
            Ok(SweepRow {
                p,
                witness_heisenberg: None,
                witness_density: witness_density(&rho, A, D, cfg.axes)?,
                negativity_ad: negativity_pair(&rho, A, D)?,
                nonclassicality_b: None,
                nonclassicality_c: None,
            })
        }
        Network::Asymmetric => Err(Error::Invalid(
            "the asymmetric network has no dephasing site; sweep the staged network instead".into(),
        )),
    }
}

/// One row per grid point, in grid order.
pub fn sweep(cfg: &ExperimentConfig, grid: &[f64]) -> Result<Vec<SweepRow>> {
    if cfg.network == Network::Asymmetric {
        return sweep_point(cfg, 0.0).map(|_| Vec::new());
    }
    grid.par_iter().map(|&p| sweep_point(cfg, p)).collect()
}

/// The circuit a config describes, with `p` applied where the network has a
/// dephasing site.
pub fn circuit_for(cfg: &ExperimentConfig) -> Result<Circuit> {
    match cfg.network {
        Network::Symmetric => build_symmetric(cfg.p.value()),
        Network::Asymmetric => build_asymmetric(),
        Network::Staged => match cfg.p {
            PSetting::Value(p) => build_staged_with_channel(cfg.stages, p, cfg.staged),
            _ => build_staged(cfg.stages, None, cfg.staged),
        },
    }
}

/// Witness value with its engine and axis pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessValue {
    pub engine: Engine,
    pub axes: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SliceReport {
    pub time_index: usize,
    /// Configured axes first, then the other axis pair.
    pub witness: Vec<WitnessValue>,
    pub negativity_ad: Tagged,
    /// Per qubit, descriptor engine only; empty for non-Clifford circuits.
    pub nonclassicality: Vec<Tagged>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub config: ConfigDocument,
    pub slices: Vec<SliceReport>,
    pub multiplets: MultipletReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

/// Single experiment: per-slice witness on both engines where defined,
/// negativity, non-classicality degrees, and the final multiplet readout.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<(RunReport, DensityMatrix)> {
    let circuit = circuit_for(cfg)?;
    let init = initial_state(cfg)?;
    let states = run_network_density(&circuit, &init)?;
    let frames = if circuit.is_clifford() || only_clifford_and_flips(&circuit) {
        Some(run_network_frames(&circuit)?)
    } else {
        None
    };
    let mut slices = Vec::with_capacity(states.len());
    for (k, rho) in states.iter().enumerate() {
        let mut witness = Vec::new();
        let mut nonclassicality = Vec::new();
        let other = if cfg.axes == WitnessAxes::XZ_ZX {
            WitnessAxes::XX_ZZ
        } else {
            WitnessAxes::XZ_ZX
        };
        for axes in [cfg.axes, other] {
            if let Some(frames) = &frames {
                witness.push(WitnessValue {
                    engine: Engine::Heisenberg,
                    axes: axes.to_string(),
                    value: witness_frames_pseudo_pure(
                        &frames[k],
                        cfg.epsilon,
                        &cfg.initial_bits,
                        A,
                        D,
                        axes,
                    )?,
                });
            }
            witness.push(WitnessValue {
                engine: Engine::Density,
                axes: axes.to_string(),
                value: witness_density(rho, A, D, axes)?,
            });
        }
        if let Some(frames) = &frames {
            let f = &frames[k];
            for q in 0..f.n() {
                nonclassicality.push(Tagged::heisenberg(nonclassicality_degree(f, q)?));
            }
        }
        slices.push(SliceReport {
            time_index: k,
            witness,
            negativity_ad: Tagged::density(negativity_pair(rho, A, D)?),
            nonclassicality,
        });
    }
    let last = states.last().expect("final state").clone();
    let multiplets = antiphase_amplitudes_with_threshold(&last, A, cfg.threshold)?;
    Ok((
        RunReport {
            version: env!("CARGO_PKG_VERSION"),
            config: cfg.to_document(),
            slices,
            multiplets,
            timing_ms: None,
        },
        last,
    ))
}

fn only_clifford_and_flips(c: &Circuit) -> bool {
    c.gates()
        .iter()
        .all(|g| g.is_clifford() || matches!(g, crate::circuits::GateOp::PhaseFlip { .. }))
}

/// Correlations tracked on the final staged state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Correlations {
    pub xa_xd: f64,
    pub za_zd: f64,
    pub za_zb: f64,
    pub xa_yb: f64,
    pub xa_xb: f64,
}

impl Correlations {
    pub fn of(rho: &DensityMatrix) -> Result<Self> {
        let e = |s: &str| rho.expectation_word(&PauliWord::from_compact(s)?);
        Ok(Correlations {
            xa_xd: e("XIIX")?,
            za_zd: e("ZIIZ")?,
            za_zb: e("ZZII")?,
            xa_yb: e("XYII")?,
            xa_xb: e("XXII")?,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StagedVariant {
    pub name: String,
    pub patterns: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub witness_ad: Tagged,
    pub negativity_ad: Tagged,
    pub negativity_ab: Tagged,
    pub correlations: Correlations,
    pub multiplets: MultipletReport,
    #[serde(skip)]
    pub state: DensityMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct StagedReport {
    pub version: &'static str,
    pub config: ConfigDocument,
    pub variants: Vec<StagedVariant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

fn variant(
    name: &str,
    patterns: usize,
    seed: Option<u64>,
    rho: DensityMatrix,
    cfg: &ExperimentConfig,
) -> Result<StagedVariant> {
    Ok(StagedVariant {
        name: name.to_string(),
        patterns,
        seed,
        witness_ad: Tagged::density(witness_density(&rho, A, D, cfg.axes)?),
        negativity_ad: Tagged::density(negativity_pair(&rho, A, D)?),
        negativity_ab: Tagged::density(negativity_pair(&rho, A, B)?),
        correlations: Correlations::of(&rho)?,
        multiplets: antiphase_amplitudes_with_threshold(&rho, A, cfg.threshold)?,
        state: rho,
    })
}

/// Undephased, sampled-average and (when requested) exhaustive-average runs
/// of the staged network.
pub fn run_staged(cfg: &ExperimentConfig) -> Result<StagedReport> {
    let init = initial_state(cfg)?;
    let template = staged_template(cfg.stages, cfg.staged)?;
    let mut variants = Vec::new();
    let bare = run_final_density(&build_staged(cfg.stages, None, cfg.staged)?, &init)?;
    variants.push(variant("undephased", 0, None, bare, cfg)?);

    let sampled_count = match cfg.patterns {
        PatternMode::None => None,
        PatternMode::Sampled(k) => Some(k),
        PatternMode::Exhaustive => Some(DEFAULT_SAMPLE_COUNT),
    };
    if let Some(count) = sampled_count {
        let patterns = sample_patterns(cfg.stages, count, true, cfg.seed)?;
        let avg = temporal_average(&template, &patterns, None, &init)?;
        variants.push(variant("sampled", count, Some(cfg.seed), avg, cfg)?);
    }
    if cfg.patterns == PatternMode::Exhaustive {
        let patterns = exhaustive_patterns(cfg.stages, true, EXHAUSTIVE_CAP)?;
        let avg = temporal_average(&template, &patterns, None, &init)?;
        variants.push(variant("exhaustive", patterns.len(), None, avg, cfg)?);
    }
    Ok(StagedReport {
        version: env!("CARGO_PKG_VERSION"),
        config: cfg.to_document(),
        variants,
        timing_ms: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_observable_terms() {
        let w = witness_observable(4, A, D, WitnessAxes::XZ_ZX).unwrap();
        assert_eq!(w.to_string(), "q_xA q_zD + q_zA q_xD");
    }

    #[test]
    fn symmetric_sweep_point() {
        let cfg = ExperimentConfig::new(Network::Symmetric);
        let row = sweep_point(&cfg, 0.25).unwrap();
        assert!((row.witness_density - 1.0).abs() < 1e-12);
        assert!((row.witness_heisenberg.unwrap() - 1.0).abs() < 1e-12);
        assert!((row.nonclassicality_b.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn asymmetric_sweep_is_refused() {
        let cfg = ExperimentConfig::new(Network::Asymmetric);
        assert!(sweep(&cfg, &[0.0]).is_err());
    }

    #[test]
    fn pseudo_pure_frame_witness_scales() {
        let frames = run_network_frames(&build_symmetric(None).unwrap()).unwrap();
        let w = witness_frames_pseudo_pure(
            &frames[3],
            0.3,
            &BasisState::zeros(4),
            A,
            D,
            WitnessAxes::XZ_ZX,
        )
        .unwrap();
        assert!((w - 0.6).abs() < 1e-12);
    }
}
