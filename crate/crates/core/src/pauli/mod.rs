//! Exact symbolic algebra of n-qubit Pauli words.
//!
//! A [`PauliTerm`] is a tensor product of single-qubit letters with a phase in
//! `{+1, -1, +i, -i}`; a [`PauliSum`] is a canonical weighted sum of words whose
//! weights live in any [`Coefficient`] ring. Two rings are provided: plain
//! complex numbers and [`DampingPoly`], polynomials in the formal dephasing
//! factor `(1-2p)`.
//!
//! Qubit 0 is qubit A, the leftmost tensor factor and the most significant bit
//! of a computational-basis index. The same convention holds across the crate.

mod basis;
mod coeff;
mod sum;
mod term;

pub use basis::BasisState;
pub use coeff::{Coefficient, DampingPoly};
pub use sum::{PauliSum, DEFAULT_NORM_CAP};
pub use term::{PauliTerm, PauliWord};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Mul;

/// A single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// Product of two letters, `self * other = phase * letter`.
    pub fn mul(self, other: Pauli) -> (Phase, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (Phase::ONE, p),
            (a, b) if a == b => (Phase::ONE, I),
            (Z, X) => (Phase::I, Y),
            (X, Z) => (Phase::MINUS_I, Y),
            (X, Y) => (Phase::I, Z),
            (Y, X) => (Phase::MINUS_I, Z),
            (Y, Z) => (Phase::I, X),
            (Z, Y) => (Phase::MINUS_I, X),
            _ => unreachable!(),
        }
    }

    /// Flips the basis bit (X or Y support).
    pub fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    /// Dense 2x2 matrix, row-major.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    fn component(self) -> char {
        self.symbol().to_ascii_lowercase()
    }
}

/// A power of `i`: one of `+1, +i, -1, -i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: u8) -> Phase {
        Phase(k % 4)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn conj(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// Rendering prefix: `""`, `"-"`, `"i"`, `"-i"`.
    pub fn prefix(self) -> &'static str {
        match self.0 {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "+1"),
            1 => write!(f, "+i"),
            2 => write!(f, "-1"),
            _ => write!(f, "-i"),
        }
    }
}

/// Label used for qubit `index` in rendered descriptors (`A`, `B`, ...).
pub fn qubit_label(index: usize) -> String {
    if index < 26 {
        ((b'A' + index as u8) as char).to_string()
    } else {
        format!("[{index}]")
    }
}

/// Bit shift of qubit `q` inside a basis index of an `n`-qubit register.
pub(crate) fn bit_shift(n: usize, q: usize) -> usize {
    n - 1 - q
}
