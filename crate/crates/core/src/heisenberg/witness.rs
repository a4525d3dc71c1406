use super::DescriptorFrame;
use crate::error::{Error, Result};
use crate::pauli::BasisState;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Z,
}

impl Axis {
    pub fn pauli(self) -> crate::pauli::Pauli {
        match self {
            Axis::X => crate::pauli::Pauli::X,
            Axis::Z => crate::pauli::Pauli::Z,
        }
    }
}

impl TryFrom<char> for Axis {
    type Error = Error;
    fn try_from(c: char) -> Result<Self> {
        match c {
            'x' | 'X' => Ok(Axis::X),
            'z' | 'Z' => Ok(Axis::Z),
            other => Err(Error::InvalidAxis(other.to_string())),
        }
    }
}

/// Two correlation directions `(probe1 axis, probe2 axis)` summed by the
/// witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WitnessAxes {
    pub first: (Axis, Axis),
    pub second: (Axis, Axis),
}

impl WitnessAxes {
    /// `<x z> + <z x>`, the complementary-direction witness.
    pub const XZ_ZX: WitnessAxes = WitnessAxes {
        first: (Axis::X, Axis::Z),
        second: (Axis::Z, Axis::X),
    };
    /// `<x x> + <z z>`.
    pub const XX_ZZ: WitnessAxes = WitnessAxes {
        first: (Axis::X, Axis::X),
        second: (Axis::Z, Axis::Z),
    };

    pub fn pairs(self) -> [(Axis, Axis); 2] {
        [self.first, self.second]
    }
}

impl FromStr for WitnessAxes {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parts: Vec<&str> = s.split('-').collect();
        let pair = |p: &str| -> Result<(Axis, Axis)> {
            let cs: Vec<char> = p.chars().collect();
            if cs.len() != 2 {
                return Err(Error::InvalidAxis(p.to_string()));
            }
            Ok((Axis::try_from(cs[0])?, Axis::try_from(cs[1])?))
        };
        match parts[..] {
            [a, b] => Ok(WitnessAxes {
                first: pair(a)?,
                second: pair(b)?,
            }),
            _ => Err(Error::InvalidAxis(s.to_string())),
        }
    }
}

impl fmt::Display for WitnessAxes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |a: Axis| match a {
            Axis::X => 'x',
            Axis::Z => 'z',
        };
        write!(
            f,
            "{}{}-{}{}",
            c(self.first.0),
            c(self.first.1),
            c(self.second.0),
            c(self.second.1)
        )
    }
}

/// `Tr{rho_H (q_a(p1) q_b(p2) + q_c(p1) q_d(p2))}` with descriptor products
/// taken probe1 first.
pub fn witness_frames(
    frame: &DescriptorFrame,
    state: &BasisState,
    probe1: usize,
    probe2: usize,
    axes: WitnessAxes,
) -> Result<f64> {
    if probe1 == probe2 {
        return Err(Error::RepeatedQubit(probe1));
    }
    let d1 = frame.descriptor(probe1)?;
    let d2 = frame.descriptor(probe2)?;
    let mut total = 0.0;
    for (a1, a2) in axes.pairs() {
        let corr = d1.get(a1).mul(d2.get(a2))?;
        total += corr.expectation_basis(state)?;
    }
    Ok(total)
}

/// Spectral norm of `[q_x, q_z]` for one qubit.
pub fn nonclassicality_degree(frame: &DescriptorFrame, qubit: usize) -> Result<f64> {
    let d = frame.descriptor(qubit)?;
    d.x.commutator(&d.z)?.operator_norm()
}
