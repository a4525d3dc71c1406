//! Gate set, sliced circuits, and builders for the three mediation networks.

mod builders;
mod config;
mod pattern;
mod template;

pub use builders::{
    build_asymmetric, build_staged, build_staged_with_channel, build_symmetric, staged_template,
    StageOrdering, StagedOptions, VOrder,
};
pub use config::{
    parse_p_grid, ConfigDocument, ExperimentConfig, Network, PSetting, PValue, PatternMode,
};
pub use pattern::{exhaustive_patterns, pattern_population, sample_patterns, DephasingPattern};
pub use template::{CircuitTemplate, Family, TemplateOp};

use crate::error::{check_range, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;

/// One operation in a circuit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum GateOp {
    H(usize),
    Z(usize),
    Cnot {
        control: usize,
        target: usize,
    },
    Cphase {
        control: usize,
        target: usize,
    },
    Swap(usize, usize),
    /// `SWAP^alpha` on the principal branch.
    PartialSwap {
        a: usize,
        b: usize,
        alpha: f64,
    },
    /// Phase-flip channel of strength `p`.
    PhaseFlip {
        qubit: usize,
        p: f64,
    },
}

impl GateOp {
    pub fn cnot(control: usize, target: usize) -> Self {
        GateOp::Cnot { control, target }
    }

    pub fn cphase(control: usize, target: usize) -> Self {
        GateOp::Cphase { control, target }
    }

    pub fn partial_swap(a: usize, b: usize, alpha: f64) -> Self {
        GateOp::PartialSwap { a, b, alpha }
    }

    pub fn phase_flip(qubit: usize, p: f64) -> Self {
        GateOp::PhaseFlip { qubit, p }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            GateOp::H(q) | GateOp::Z(q) | GateOp::PhaseFlip { qubit: q, .. } => vec![q],
            GateOp::Cnot { control, target } | GateOp::Cphase { control, target } => {
                vec![control, target]
            }
            GateOp::Swap(a, b) | GateOp::PartialSwap { a, b, .. } => vec![a, b],
        }
    }

    pub fn is_unitary(&self) -> bool {
        !matches!(self, GateOp::PhaseFlip { .. })
    }

    /// Gates the descriptor engine can track exactly.
    pub fn is_clifford(&self) -> bool {
        !matches!(self, GateOp::PartialSwap { .. } | GateOp::PhaseFlip { .. })
    }

    /// Checks qubit indices and parameter ranges for an `n`-qubit register.
    pub fn validate(&self, n: usize) -> Result<()> {
        let qs = self.qubits();
        for &q in &qs {
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, n });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::RepeatedQubit(qs[0]));
        }
        match *self {
            GateOp::PartialSwap { alpha, .. } => {
                if !(alpha > 0.0 && alpha <= 1.0) {
                    return Err(Error::OutOfRange {
                        name: "alpha",
                        value: alpha,
                        lo: 0.0,
                        hi: 1.0,
                    });
                }
            }
            GateOp::PhaseFlip { p, .. } => check_range("p", p, 0.0, 1.0)?,
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GateOp::H(q) => write!(f, "H({q})"),
            GateOp::Z(q) => write!(f, "Z({q})"),
            GateOp::Cnot { control, target } => write!(f, "CNOT({control},{target})"),
            GateOp::Cphase { control, target } => write!(f, "CPHASE({control},{target})"),
            GateOp::Swap(a, b) => write!(f, "SWAP({a},{b})"),
            GateOp::PartialSwap { a, b, alpha } => write!(f, "PartialSwap({a},{b};{alpha})"),
            GateOp::PhaseFlip { qubit, p } => write!(f, "PhaseFlip({qubit};{p})"),
        }
    }
}

/// An ordered gate list split into time slices.
///
/// Slice `k` holds the gates between `t_k` and `t_{k+1}`; `t_0` is the input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n: usize,
    gates: Vec<GateOp>,
    marks: Vec<usize>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit {
            n,
            gates: Vec::new(),
            marks: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn push(&mut self, gate: GateOp) -> Result<&mut Self> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = GateOp>) -> Result<&mut Self> {
        for g in gates {
            self.push(g)?;
        }
        Ok(self)
    }

    /// Closes the current slice. Slices must be nonempty so labels stay
    /// strictly increasing.
    pub fn mark_slice(&mut self) -> Result<&mut Self> {
        let last = self.marks.last().copied().unwrap_or(0);
        if self.gates.len() == last {
            return Err(Error::Invalid("empty time slice".into()));
        }
        self.marks.push(self.gates.len());
        Ok(self)
    }

    pub fn gates(&self) -> &[GateOp] {
        &self.gates
    }

    /// Gate groups, one per slice; trailing unmarked gates form a final slice.
    pub fn slices(&self) -> Vec<&[GateOp]> {
        let mut out = Vec::with_capacity(self.marks.len() + 1);
        let mut start = 0;
        for &m in &self.marks {
            out.push(&self.gates[start..m]);
            start = m;
        }
        if start < self.gates.len() {
            out.push(&self.gates[start..]);
        }
        out
    }

    /// Number of time points including `t_0`.
    pub fn time_points(&self) -> usize {
        self.slices().len() + 1
    }

    pub fn is_clifford(&self) -> bool {
        self.gates.iter().all(GateOp::is_clifford)
    }
}
