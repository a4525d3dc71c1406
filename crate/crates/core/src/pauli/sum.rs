use super::coeff::Coefficient;
use super::term::{split_phase_prefix, PauliTerm, PauliWord};
use super::{bit_shift, BasisState, Pauli};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Largest register for which [`PauliSum::operator_norm`] builds a dense matrix.
pub const DEFAULT_NORM_CAP: usize = 6;

/// Imaginary residue tolerated by basis-state expectations.
const BASIS_IMAG_TOLERANCE: f64 = 1e-12;

/// A canonical weighted sum of Pauli words.
///
/// Each word appears at most once and no stored coefficient is negligible.
/// Term phases are folded into the coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliSum<C = Complex64> {
    n: usize,
    terms: BTreeMap<PauliWord, C>,
}

impl<C: Coefficient> PauliSum<C> {
    pub fn zero(n: usize) -> Self {
        PauliSum {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_term(&PauliTerm::identity(n))
    }

    pub fn single(n: usize, q: usize, letter: Pauli) -> Self {
        Self::from_term(&PauliTerm::single(n, q, letter))
    }

    pub fn from_term(term: &PauliTerm) -> Self {
        Self::from_scaled_term(C::one(), term)
    }

    pub fn from_scaled_term(coeff: C, term: &PauliTerm) -> Self {
        let mut s = Self::zero(term.n());
        s.accumulate(term.word.clone(), coeff * C::from_phase(term.phase));
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in word order.
    pub fn terms(&self) -> impl Iterator<Item = (&PauliWord, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &PauliWord) -> Option<&C> {
        self.terms.get(word)
    }

    /// The single stored term, if the sum has exactly one.
    pub fn as_single(&self) -> Option<(&PauliWord, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn accumulate(&mut self, word: PauliWord, coeff: C) {
        let merged = match self.terms.remove(&word) {
            Some(existing) => existing + coeff,
            None => coeff,
        };
        if !merged.is_negligible() {
            self.terms.insert(word, merged);
        }
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&(-C::one())))
    }

    pub fn scale(&self, factor: &C) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            out.accumulate(w.clone(), c.clone() * factor.clone());
        }
        out
    }

    /// Scales only the terms selected by `pick`.
    pub fn scale_where(&self, factor: &C, pick: impl Fn(&PauliWord) -> bool) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let c = if pick(w) {
                c.clone() * factor.clone()
            } else {
                c.clone()
            };
            out.accumulate(w.clone(), c);
        }
        out
    }

    /// Operator product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = Self::zero(self.n);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let (ph, w) = wa.mul(wb)?;
                out.accumulate(w, ca.clone() * cb.clone() * C::from_phase(ph));
            }
        }
        Ok(out)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `self * other + other * self`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> PauliSum<D> {
        let mut out = PauliSum::<D>::zero(self.n);
        for (w, c) in &self.terms {
            out.accumulate(w.clone(), f(c));
        }
        out
    }

    /// Parses a rendering produced by [`Display`](fmt::Display).
    ///
    /// Terms are separated by `" + "`; factors inside a word may appear in any
    /// order.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        let mut out = Self::zero(n);
        if s == "0" {
            return Ok(out);
        }
        for piece in s.split(" + ") {
            let (phase, rest) = split_phase_prefix(piece.trim());
            let (coeff, rest) = C::parse_factor(rest)?;
            let term = PauliTerm::parse(rest, n)?;
            out.accumulate(term.word, coeff * C::from_phase(phase * term.phase));
        }
        Ok(out)
    }
}

impl PauliSum<Complex64> {
    /// Dense `2^n x 2^n` realization.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n;
        let mut m = DMatrix::zeros(dim, dim);
        for (w, c) in &self.terms {
            for j in 0..dim {
                let (i, amp) = w.apply_to_basis(j);
                m[(i, j)] += amp * c;
            }
        }
        m
    }

    /// Spectral norm (largest singular value), evaluated densely for
    /// registers of up to [`DEFAULT_NORM_CAP`] qubits.
    pub fn operator_norm(&self) -> Result<f64> {
        self.operator_norm_with_cap(DEFAULT_NORM_CAP)
    }

    pub fn operator_norm_with_cap(&self, cap: usize) -> Result<f64> {
        if self.n > cap {
            return Err(Error::TooManyQubits {
                what: "operator norm",
                n: self.n,
                cap,
            });
        }
        if self.is_zero() {
            return Ok(0.0);
        }
        if let Some((_, c)) = self.as_single() {
            // Pauli words are unitary
            return Ok(c.norm());
        }
        let m = self.to_dense();
        let sv = m.singular_values();
        Ok(sv.iter().cloned().fold(0.0, f64::max))
    }

    /// `<state| self |state>` for a computational-basis state.
    pub fn expectation_basis(&self, state: &BasisState) -> Result<f64> {
        if state.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: state.n(),
            });
        }
        let idx = state.index();
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, c) in &self.terms {
            if !w.is_diagonal() {
                continue;
            }
            let odd = w
                .letters()
                .iter()
                .enumerate()
                .filter(|(q, &p)| p == Pauli::Z && (idx >> bit_shift(self.n, *q)) & 1 == 1)
                .count();
            acc += if odd % 2 == 0 { *c } else { -*c };
        }
        if acc.im.abs() > BASIS_IMAG_TOLERANCE {
            return Err(Error::NonHermitian { residue: acc.im });
        }
        Ok(acc.re)
    }
}

impl<C: Coefficient> fmt::Display for PauliSum<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let (ph, factor) = c.render_parts();
            match factor {
                Some(fac) => write!(f, "{}{} {}", ph.prefix(), fac, w)?,
                None => write!(f, "{}{}", ph.prefix(), w)?,
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> From<PauliTerm> for PauliSum<C> {
    fn from(term: PauliTerm) -> Self {
        Self::from_term(&term)
    }
}
