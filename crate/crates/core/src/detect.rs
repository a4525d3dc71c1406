//! Emulated NMR readout: a Hadamard on one spin, then per-spin in-phase and
//! antiphase amplitudes showing where a two-spin coherence sits.

use crate::circuits::GateOp;
use crate::density::DensityMatrix;
use crate::error::Result;
use crate::pauli::{qubit_label, Pauli, PauliWord};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Classification threshold, 10% of the largest antiphase amplitude (2).
pub const DEFAULT_THRESHOLD: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Amplitudes {
    pub inphase: f64,
    pub antiphase: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Silent,
    Antiphase(String),
    Other,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Silent => f.write_str("silent"),
            Classification::Antiphase(p) => write!(f, "antiphase({p})"),
            Classification::Other => f.write_str("other"),
        }
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Amplitudes keyed by spin then partner, plus one classification per spin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultipletReport {
    pub spins: BTreeMap<String, BTreeMap<String, Amplitudes>>,
    pub classification: BTreeMap<String, Classification>,
}

impl MultipletReport {
    pub fn amplitudes(&self, spin: &str, partner: &str) -> Option<Amplitudes> {
        self.spins.get(spin)?.get(partner).copied()
    }

    pub fn classification_of(&self, spin: &str) -> Option<&Classification> {
        self.classification.get(spin)
    }

    /// Spins classified as antiphase, in label order.
    pub fn antiphase_spins(&self) -> Vec<String> {
        self.classification
            .iter()
            .filter(|(_, c)| matches!(c, Classification::Antiphase(_)))
            .map(|(s, _)| s.clone())
            .collect()
    }
}

fn word(n: usize, letters: &[(usize, Pauli)]) -> PauliWord {
    let mut v = vec![Pauli::I; n];
    for &(q, p) in letters {
        v[q] = p;
    }
    PauliWord::from_letters(v)
}

/// Antiphase readout after a Hadamard on `readout`, with the default
/// threshold.
pub fn antiphase_amplitudes(rho: &DensityMatrix, readout: usize) -> Result<MultipletReport> {
    antiphase_amplitudes_with_threshold(rho, readout, DEFAULT_THRESHOLD)
}

pub fn antiphase_amplitudes_with_threshold(
    rho: &DensityMatrix,
    readout: usize,
    threshold: f64,
) -> Result<MultipletReport> {
    let n = rho.n();
    let probed = rho.apply_gate(&GateOp::H(readout))?;
    let mut spins = BTreeMap::new();
    let mut classification = BTreeMap::new();
    for r in 0..n {
        let ex = probed.expectation_word(&word(n, &[(r, Pauli::X)]))?;
        let ey = probed.expectation_word(&word(n, &[(r, Pauli::Y)]))?;
        let inphase = ex.hypot(ey);
        let mut partners = BTreeMap::new();
        let mut best: Option<(usize, f64)> = None;
        for s in (0..n).filter(|&s| s != r) {
            let xz = 2.0 * probed.expectation_word(&word(n, &[(r, Pauli::X), (s, Pauli::Z)]))?;
            let yz = 2.0 * probed.expectation_word(&word(n, &[(r, Pauli::Y), (s, Pauli::Z)]))?;
            let antiphase = xz.hypot(yz);
            if best.is_none_or(|(_, b)| antiphase > b) {
                best = Some((s, antiphase));
            }
            partners.insert(qubit_label(s), Amplitudes { inphase, antiphase });
        }
        let max_anti = best.map_or(0.0, |(_, a)| a);
        let class = if max_anti > threshold && inphase < threshold {
            Classification::Antiphase(qubit_label(best.expect("partner").0))
        } else if max_anti < threshold && inphase < threshold {
            Classification::Silent
        } else {
            Classification::Other
        };
        spins.insert(qubit_label(r), partners);
        classification.insert(qubit_label(r), class);
    }
    Ok(MultipletReport {
        spins,
        classification,
    })
}
