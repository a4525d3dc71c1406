use super::DensityMatrix;
use crate::circuits::{Circuit, CircuitTemplate, DephasingPattern, GateOp};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

/// States at `t_0` and after every slice.
pub fn run_network_density(
    circuit: &Circuit,
    initial: &DensityMatrix,
) -> Result<Vec<DensityMatrix>> {
    if circuit.n() != initial.n() {
        return Err(Error::DimensionMismatch {
            expected: initial.n(),
            found: circuit.n(),
        });
    }
    let mut states = vec![initial.clone()];
    for slice in circuit.slices() {
        let mut rho = states.last().cloned().expect("initial state");
        for gate in slice {
            rho = rho.apply_gate(gate)?;
        }
        states.push(rho);
    }
    Ok(states)
}

/// Final state only.
pub fn run_final_density(circuit: &Circuit, initial: &DensityMatrix) -> Result<DensityMatrix> {
    let mut states = run_network_density(circuit, initial)?;
    Ok(states.pop().expect("at least the initial state"))
}

const AVERAGE_CHUNK: usize = 64;

/// Final states of consecutive patterns. Intermediate states are kept so a
/// pattern only replays the gates after its common prefix with the previous
/// one; the arithmetic is the same as a fresh run.
fn run_chunk(
    template: &CircuitTemplate,
    chunk: &[DephasingPattern],
    initial: &DensityMatrix,
) -> Result<Vec<DensityMatrix>> {
    let mut prev: Vec<GateOp> = Vec::new();
    let mut states = vec![initial.clone()];
    let mut out = Vec::with_capacity(chunk.len());
    for p in chunk {
        let circuit = template.instantiate(p)?;
        if circuit.n() != initial.n() {
            return Err(Error::DimensionMismatch {
                expected: initial.n(),
                found: circuit.n(),
            });
        }
        let gates = circuit.gates();
        let common = prev.iter().zip(gates).take_while(|(a, b)| a == b).count();
        states.truncate(common + 1);
        for g in &gates[common..] {
            let next = states.last().expect("initial state").apply_gate(g)?;
            states.push(next);
        }
        out.push(states.last().expect("final state").clone());
        prev = gates.to_vec();
    }
    Ok(out)
}

/// Convex combination of the outputs of each pattern's concrete circuit.
///
/// Patterns run in parallel; the weighted sum is reduced in pattern order so
/// the result does not depend on scheduling.
pub fn temporal_average(
    template: &CircuitTemplate,
    patterns: &[DephasingPattern],
    weights: Option<&[f64]>,
    initial: &DensityMatrix,
) -> Result<DensityMatrix> {
    if patterns.is_empty() {
        return Err(Error::InvalidWeights("no patterns to average".into()));
    }
    let uniform;
    let weights = match weights {
        Some(w) => {
            if w.len() != patterns.len() {
                return Err(Error::InvalidWeights(format!(
                    "{} weights for {} patterns",
                    w.len(),
                    patterns.len()
                )));
            }
            if let Some(bad) = w.iter().find(|x| !(**x >= 0.0)) {
                return Err(Error::InvalidWeights(format!("negative weight {bad}")));
            }
            let total: f64 = w.iter().sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidWeights(format!("weights sum to {total}")));
            }
            w
        }
        None => {
            uniform = vec![1.0 / patterns.len() as f64; patterns.len()];
            &uniform[..]
        }
    };
    for p in patterns {
        if p.stages() != template.stages() {
            return Err(Error::PatternLength {
                expected: template.stages(),
                found: p.stages(),
            });
        }
    }
    let finals: Vec<DensityMatrix> = patterns
        .par_chunks(AVERAGE_CHUNK)
        .map(|chunk| run_chunk(template, chunk, initial))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let dim = 1usize << initial.n();
    let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
    for (rho, &w) in finals.iter().zip(weights) {
        acc += rho.matrix() * Complex64::new(w, 0.0);
    }
    DensityMatrix::from_matrix(initial.n(), acc)
}
