use super::{bit_shift, qubit_label, Pauli, Phase};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// The letter string of a Pauli operator, without phase.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliWord(Vec<Pauli>);

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        PauliWord(vec![Pauli::I; n])
    }

    /// `letter` on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, letter: Pauli) -> Self {
        let mut w = Self::identity(n);
        w.0[q] = letter;
        w
    }

    pub fn from_letters(letters: Vec<Pauli>) -> Self {
        PauliWord(letters)
    }

    /// Parses a compact letter string such as `"XIZI"`.
    pub fn from_compact(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| Pauli::from_symbol(c).ok_or_else(|| Error::Parse(format!("bad letter '{c}'"))))
            .collect::<Result<Vec<_>>>()
            .map(PauliWord)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn get(&self, q: usize) -> Pauli {
        self.0[q]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// True when every letter lies in `{I, Z}`.
    pub fn is_diagonal(&self) -> bool {
        self.0.iter().all(|p| matches!(p, Pauli::I | Pauli::Z))
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&p| p != Pauli::I).count()
    }

    pub fn compact(&self) -> String {
        self.0.iter().map(|p| p.symbol()).collect()
    }

    /// Letter-wise product with accumulated phase.
    pub fn mul(&self, other: &PauliWord) -> Result<(Phase, PauliWord)> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        let mut phase = Phase::ONE;
        let letters = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| {
                let (ph, c) = a.mul(b);
                phase = phase * ph;
                c
            })
            .collect();
        Ok((phase, PauliWord(letters)))
    }

    pub fn commutes_with(&self, other: &PauliWord) -> bool {
        let anti = self
            .0
            .iter()
            .zip(&other.0)
            .filter(|(&a, &b)| a != Pauli::I && b != Pauli::I && a != b)
            .count();
        anti % 2 == 0
    }

    /// Column action: `P|j> = amp |i>`, returned as `(i, amp)`.
    pub(crate) fn apply_to_basis(&self, j: usize) -> (usize, Complex64) {
        let n = self.n();
        let mut i = j;
        let mut amp = Phase::ONE;
        for (q, &p) in self.0.iter().enumerate() {
            let shift = bit_shift(n, q);
            let bit = (j >> shift) & 1;
            match p {
                Pauli::I => {}
                Pauli::X => i ^= 1 << shift,
                Pauli::Y => {
                    i ^= 1 << shift;
                    amp = amp * if bit == 0 { Phase::I } else { Phase::MINUS_I };
                }
                Pauli::Z => {
                    if bit == 1 {
                        amp = amp * Phase::MINUS_ONE;
                    }
                }
            }
        }
        (i, amp.to_complex())
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n();
        let mut m = DMatrix::zeros(dim, dim);
        for j in 0..dim {
            let (i, amp) = self.apply_to_basis(j);
            m[(i, j)] = amp;
        }
        m
    }

    /// Parses the canonical rendering (`"q_zA q_xB"`, `"id"`).
    ///
    /// Factors may appear in any order and may repeat a qubit; they are
    /// multiplied left to right, so the returned phase carries any reordering
    /// cost.
    pub fn parse(s: &str, n: usize) -> Result<(Phase, PauliWord)> {
        let s = s.trim();
        let mut phase = Phase::ONE;
        let mut word = PauliWord::identity(n);
        if s == "id" {
            return Ok((phase, word));
        }
        let bytes = s.as_bytes();
        let mut pos = 0;
        let bad = |msg: &str| Error::Parse(format!("{msg} in descriptor '{s}'"));
        while pos < bytes.len() {
            if bytes[pos].is_ascii_whitespace() || bytes[pos] == b'*' {
                pos += 1;
                continue;
            }
            if !s[pos..].starts_with("q_") {
                return Err(bad("expected 'q_'"));
            }
            pos += 2;
            let comp = *bytes.get(pos).ok_or_else(|| bad("missing component"))? as char;
            let letter = match comp {
                'x' => Pauli::X,
                'y' => Pauli::Y,
                'z' => Pauli::Z,
                _ => return Err(bad("component must be x, y or z")),
            };
            pos += 1;
            let (q, used) = parse_label(&s[pos..]).ok_or_else(|| bad("bad qubit label"))?;
            pos += used;
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, n });
            }
            let (ph, w) = word.mul(&PauliWord::single(n, q, letter))?;
            phase = phase * ph;
            word = w;
        }
        Ok((phase, word))
    }
}

fn parse_label(s: &str) -> Option<(usize, usize)> {
    let first = *s.as_bytes().first()?;
    if first.is_ascii_uppercase() {
        return Some(((first - b'A') as usize, 1));
    }
    if first == b'[' {
        let close = s.find(']')?;
        let q = s[1..close].parse().ok()?;
        return Some((q, close + 1));
    }
    None
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let mut first = true;
        for (q, &p) in self.0.iter().enumerate() {
            if p == Pauli::I {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "q_{}{}", p.component(), qubit_label(q))?;
        }
        Ok(())
    }
}

/// A Pauli word with a unit phase.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliTerm {
    pub phase: Phase,
    pub word: PauliWord,
}

impl PauliTerm {
    pub fn new(phase: Phase, word: PauliWord) -> Self {
        PauliTerm { phase, word }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Phase::ONE, PauliWord::identity(n))
    }

    pub fn single(n: usize, q: usize, letter: Pauli) -> Self {
        Self::new(Phase::ONE, PauliWord::single(n, q, letter))
    }

    pub fn n(&self) -> usize {
        self.word.n()
    }

    /// Operator product `self * other`.
    pub fn mul(&self, other: &PauliTerm) -> Result<PauliTerm> {
        let (ph, word) = self.word.mul(&other.word)?;
        Ok(PauliTerm::new(self.phase * other.phase * ph, word))
    }

    pub fn commutes_with(&self, other: &PauliTerm) -> bool {
        self.word.commutes_with(&other.word)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        self.word.to_dense() * self.phase.to_complex()
    }

    /// Parses `[-][i]<word>` as produced by [`Display`](fmt::Display).
    pub fn parse(s: &str, n: usize) -> Result<PauliTerm> {
        let (phase, rest) = split_phase_prefix(s.trim());
        let (ph, word) = PauliWord::parse(rest, n)?;
        Ok(PauliTerm::new(phase * ph, word))
    }
}

/// Splits a leading `-`, `i` or `-i` off a rendered term.
pub(crate) fn split_phase_prefix(s: &str) -> (Phase, &str) {
    let (mut phase, mut rest) = match s.strip_prefix('-') {
        Some(r) => (Phase::MINUS_ONE, r.trim_start()),
        None => (Phase::ONE, s),
    };
    if let Some(r) = rest.strip_prefix('i') {
        // "id" is the identity word, not a phase followed by "d".
        let is_identity_word = r.starts_with('d') && !r.starts_with("id");
        if !is_identity_word {
            phase = phase * Phase::I;
            rest = r.trim_start();
        }
    }
    (phase, rest)
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.phase.prefix(), self.word)
    }
}
