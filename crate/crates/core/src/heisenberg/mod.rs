//! Heisenberg-picture descriptor tracking.
//!
//! Each qubit carries a pair of evolved observables `{q_x(t), q_z(t)}` while
//! the state stays fixed at a basis state. Clifford gates act as substitution
//! rules on the current descriptors; the phase-flip channel acts through its
//! effective map on the dephased qubit's own pair.

mod table;
mod witness;

pub use table::{render_table, FrameDump, QubitDump, TermDump};
pub use witness::{nonclassicality_degree, witness_frames, Axis, WitnessAxes};

use crate::circuits::{Circuit, GateOp};
use crate::error::{check_range, Error, Result};
use crate::pauli::{BasisState, Coefficient, DampingPoly, Pauli, PauliSum, PauliWord, Phase};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// The two tracked descriptors of one qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Descriptor<C = Complex64> {
    pub x: PauliSum<C>,
    pub z: PauliSum<C>,
}

impl<C> Descriptor<C> {
    pub fn get(&self, axis: Axis) -> &PauliSum<C> {
        match axis {
            Axis::X => &self.x,
            Axis::Z => &self.z,
        }
    }
}

/// Per-qubit descriptor pairs at one time slice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DescriptorFrame<C = Complex64> {
    time_index: usize,
    qubits: Vec<Descriptor<C>>,
}

/// A frame whose coefficients carry the dephasing factor `(1-2p)` formally.
pub type SymbolicFrame = DescriptorFrame<DampingPoly>;

impl<C: Coefficient> DescriptorFrame<C> {
    /// Canonical `t_0` frame: `q_x = X_a`, `q_z = Z_a` for every qubit `a`.
    pub fn init(n: usize) -> Self {
        let qubits = (0..n)
            .map(|q| Descriptor {
                x: PauliSum::single(n, q, Pauli::X),
                z: PauliSum::single(n, q, Pauli::Z),
            })
            .collect();
        DescriptorFrame {
            time_index: 0,
            qubits,
        }
    }

    pub fn n(&self) -> usize {
        self.qubits.len()
    }

    pub fn time_index(&self) -> usize {
        self.time_index
    }

    pub fn descriptors(&self) -> &[Descriptor<C>] {
        &self.qubits
    }

    pub fn descriptor(&self, qubit: usize) -> Result<&Descriptor<C>> {
        self.qubits.get(qubit).ok_or(Error::QubitOutOfRange {
            index: qubit,
            n: self.n(),
        })
    }

    fn with_time(mut self, t: usize) -> Self {
        self.time_index = t;
        self
    }

    /// Applies one Clifford gate as a substitution on the current descriptors.
    pub fn apply_gate(&self, gate: &GateOp) -> Result<Self> {
        gate.validate(self.n())?;
        let mut next = self.clone();
        let q = &self.qubits;
        match *gate {
            GateOp::H(a) => {
                let d = &mut next.qubits[a];
                std::mem::swap(&mut d.x, &mut d.z);
            }
            GateOp::Z(a) => {
                next.qubits[a].x = q[a].x.scale(&(-C::one()));
            }
            GateOp::Cnot { control, target } => {
                next.qubits[control].x = q[control].x.mul(&q[target].x)?;
                next.qubits[target].z = q[control].z.mul(&q[target].z)?;
            }
            GateOp::Cphase { control, target } => {
                next.qubits[control].x = q[control].x.mul(&q[target].z)?;
                next.qubits[target].x = q[control].z.mul(&q[target].x)?;
            }
            GateOp::Swap(a, b) => {
                next.qubits.swap(a, b);
            }
            GateOp::PartialSwap { .. } => {
                return Err(Error::UnsupportedGate {
                    gate: gate.to_string(),
                    hint: "partial swaps are not Clifford; run this circuit on the density engine",
                })
            }
            GateOp::PhaseFlip { .. } => {
                return Err(Error::UnsupportedGate {
                    gate: gate.to_string(),
                    hint: "channels act through apply_dephasing, not as gates",
                })
            }
        }
        Ok(next)
    }

    /// Effective phase-flip map: terms of the target qubit's own descriptors
    /// with X or Y on that qubit are multiplied by `factor`.
    pub fn apply_dephasing_factor(&self, qubit: usize, factor: &C) -> Result<Self> {
        self.descriptor(qubit)?;
        let mut next = self.clone();
        let pick = |w: &PauliWord| w.get(qubit).flips();
        let d = &self.qubits[qubit];
        next.qubits[qubit] = Descriptor {
            x: d.x.scale_where(factor, pick),
            z: d.z.scale_where(factor, pick),
        };
        Ok(next)
    }

    /// Heisenberg image of a physical Pauli word, `Y = i X Z` on each qubit.
    pub fn image(&self, word: &PauliWord) -> Result<PauliSum<C>> {
        let n = self.n();
        if word.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: word.n(),
            });
        }
        let mut out = PauliSum::identity(n);
        for (q, &letter) in word.letters().iter().enumerate() {
            let d = &self.qubits[q];
            out = match letter {
                Pauli::I => out,
                Pauli::X => out.mul(&d.x)?,
                Pauli::Z => out.mul(&d.z)?,
                Pauli::Y => out.mul(&d.x)?.mul(&d.z)?.scale(&C::from_phase(Phase::I)),
            };
        }
        Ok(out)
    }

    /// Every descriptor is a single word with phase `+1` or `-1`.
    pub fn is_clifford_closed(&self) -> bool
    where
        C: Into<Complex64> + Copy,
    {
        self.qubits.iter().all(|d| {
            [&d.x, &d.z].iter().all(|s| {
                s.as_single().is_some_and(|(_, c)| {
                    let c: Complex64 = (*c).into();
                    c.im.abs() < 1e-12 && (c.re.abs() - 1.0).abs() < 1e-12
                })
            })
        })
    }

    /// Each pair anticommutes and each descriptor squares to the identity.
    pub fn check_unitarity_pairing(&self) -> Result<bool> {
        let id = PauliSum::<C>::identity(self.n());
        for d in &self.qubits {
            if !d.x.anticommutator(&d.z)?.is_zero() {
                return Ok(false);
            }
            if d.x.mul(&d.x)? != id || d.z.mul(&d.z)? != id {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl DescriptorFrame<Complex64> {
    /// Numeric effective dephasing of strength `p`, factor `1-2p`.
    pub fn apply_dephasing(&self, qubit: usize, p: f64) -> Result<Self> {
        check_range("p", p, 0.0, 1.0)?;
        self.apply_dephasing_factor(qubit, &Complex64::new(1.0 - 2.0 * p, 0.0))
    }

    /// `Tr(rho_H * image(word))`.
    pub fn expectation(&self, state: &BasisState, word: &PauliWord) -> Result<f64> {
        self.image(word)?.expectation_basis(state)
    }
}

impl SymbolicFrame {
    /// Effective dephasing with the formal factor `(1-2p)`.
    pub fn apply_symbolic_dephasing(&self, qubit: usize) -> Result<Self> {
        self.apply_dephasing_factor(qubit, &DampingPoly::factor())
    }

    /// Substitutes a concrete `p` into every coefficient.
    pub fn evaluate(&self, p: f64) -> DescriptorFrame<Complex64> {
        DescriptorFrame {
            time_index: self.time_index,
            qubits: self
                .qubits
                .iter()
                .map(|d| Descriptor {
                    x: d.x.map_coefficients(|c| c.eval(p)),
                    z: d.z.map_coefficients(|c| c.eval(p)),
                })
                .collect(),
        }
    }
}

fn run_with<C: Coefficient>(
    circuit: &Circuit,
    dephase: impl Fn(&DescriptorFrame<C>, usize, f64) -> Result<DescriptorFrame<C>>,
) -> Result<Vec<DescriptorFrame<C>>> {
    let mut frames = vec![DescriptorFrame::init(circuit.n())];
    for (k, slice) in circuit.slices().into_iter().enumerate() {
        let mut frame = frames.last().cloned().expect("t0 frame");
        for gate in slice {
            frame = match *gate {
                GateOp::PhaseFlip { qubit, p } => dephase(&frame, qubit, p)?,
                _ => frame.apply_gate(gate)?,
            };
        }
        frames.push(frame.with_time(k + 1));
    }
    Ok(frames)
}

/// One frame per time slice, `t_0` included.
pub fn run_network_frames(circuit: &Circuit) -> Result<Vec<DescriptorFrame>> {
    run_with(circuit, |f, q, p| f.apply_dephasing(q, p))
}

/// Like [`run_network_frames`] but every phase flip contributes the formal
/// factor `(1-2p)` regardless of its numeric strength.
pub fn run_network_frames_symbolic(circuit: &Circuit) -> Result<Vec<SymbolicFrame>> {
    run_with(circuit, |f, q, _| f.apply_symbolic_dephasing(q))
}
