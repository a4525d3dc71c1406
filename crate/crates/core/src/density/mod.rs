//! Dense density-matrix engine: the numerical reference for every
//! experiment.

mod average;
mod gates;
mod measures;

pub use average::{run_final_density, run_network_density, temporal_average};
pub use gates::{gate_unitary, partial_swap_local};

use crate::circuits::GateOp;
use crate::error::{check_range, Error, Result};
use crate::pauli::{bit_shift, BasisState, PauliSum, PauliWord};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Largest register the dense engine accepts.
pub const DENSE_CAP: usize = 10;

/// Tolerance for the Hermitian, unit-trace and PSD checks.
pub const STATE_TOLERANCE: f64 = 1e-10;

const EXPECTATION_IMAG_TOLERANCE: f64 = 1e-10;

/// A `2^n x 2^n` density operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    m: DMatrix<Complex64>,
}

fn check_cap(n: usize) -> Result<()> {
    if n == 0 || n > DENSE_CAP {
        return Err(Error::TooManyQubits {
            what: "density matrix",
            n,
            cap: DENSE_CAP,
        });
    }
    Ok(())
}

impl DensityMatrix {
    /// Wraps a matrix without checking the state invariants; see
    /// [`DensityMatrix::validate`].
    pub fn from_matrix(n: usize, m: DMatrix<Complex64>) -> Result<Self> {
        check_cap(n)?;
        let dim = 1usize << n;
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.nrows(),
            });
        }
        Ok(DensityMatrix { n, m })
    }

    /// `|psi><psi|` for a normalized state vector.
    pub fn from_pure(n: usize, psi: &[Complex64]) -> Result<Self> {
        let v = nalgebra::DVector::from_column_slice(psi);
        Self::from_matrix(n, &v * v.adjoint())
    }

    pub fn basis(bits: &BasisState) -> Result<Self> {
        let n = bits.n();
        check_cap(n)?;
        let dim = 1usize << n;
        let mut m = DMatrix::zeros(dim, dim);
        let i = bits.index();
        m[(i, i)] = Complex64::new(1.0, 0.0);
        Ok(DensityMatrix { n, m })
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        check_cap(n)?;
        let dim = 1usize << n;
        let m = DMatrix::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0);
        Ok(DensityMatrix { n, m })
    }

    /// `(1-eps) 1/2^n + eps |bits><bits|`.
    pub fn pseudo_pure(epsilon: f64, bits: &BasisState) -> Result<Self> {
        check_range("epsilon", epsilon, 0.0, 1.0)?;
        let mixed = Self::maximally_mixed(bits.n())?;
        let pure = Self::basis(bits)?;
        let m =
            mixed.m * Complex64::new(1.0 - epsilon, 0.0) + pure.m * Complex64::new(epsilon, 0.0);
        Ok(DensityMatrix { n: bits.n(), m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    /// Hermitian, unit trace and PSD, each within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let herm = (&self.m - self.m.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm > tol {
            return Err(Error::Invalid(format!(
                "state is not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = self.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::Invalid(format!("state trace is {tr}")));
        }
        let min = self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -tol {
            return Err(Error::Invalid(format!("state has eigenvalue {min:e}")));
        }
        Ok(())
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: n,
            });
        }
        Ok(())
    }

    /// Applies one circuit operation: unitary gates by conjugation, phase
    /// flips as channels.
    pub fn apply_gate(&self, gate: &GateOp) -> Result<Self> {
        gate.validate(self.n)?;
        if let GateOp::PhaseFlip { qubit, p } = *gate {
            return self.apply_phase_flip(qubit, p);
        }
        let (qs, local) = gates::local_unitary(gate)?;
        Ok(DensityMatrix {
            n: self.n,
            m: gates::conjugate_local(&self.m, self.n, &qs, &local),
        })
    }

    /// `U rho U^dagger` for an explicit full-register unitary.
    pub fn apply_unitary(&self, u: &DMatrix<Complex64>) -> Result<Self> {
        self.check_n(u.nrows().trailing_zeros() as usize)?;
        Ok(DensityMatrix {
            n: self.n,
            m: u * &self.m * u.adjoint(),
        })
    }

    /// `(1-p) rho + p Z rho Z` on `qubit`.
    pub fn apply_phase_flip(&self, qubit: usize, p: f64) -> Result<Self> {
        check_range("p", p, 0.0, 1.0)?;
        if qubit >= self.n {
            return Err(Error::QubitOutOfRange {
                index: qubit,
                n: self.n,
            });
        }
        let bit = 1usize << bit_shift(self.n, qubit);
        let damp = 1.0 - 2.0 * p;
        let mut m = self.m.clone();
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                if (i ^ j) & bit != 0 {
                    m[(i, j)] *= damp;
                }
            }
        }
        Ok(DensityMatrix { n: self.n, m })
    }

    fn word_trace(&self, word: &PauliWord) -> Complex64 {
        (0..self.m.ncols())
            .map(|j| {
                let (i, amp) = word.apply_to_basis(j);
                self.m[(j, i)] * amp
            })
            .sum()
    }

    /// `Re Tr(rho a)`; an imaginary part above `1e-10` is an error.
    pub fn expectation(&self, a: &PauliSum) -> Result<f64> {
        self.check_n(a.n())?;
        let total: Complex64 = a.terms().map(|(w, c)| self.word_trace(w) * c).sum();
        if total.im.abs() > EXPECTATION_IMAG_TOLERANCE {
            return Err(Error::NonHermitian { residue: total.im });
        }
        Ok(total.re)
    }

    /// Expectation of a bare Pauli word given in compact form (`"XIIZ"`).
    pub fn expectation_word(&self, word: &PauliWord) -> Result<f64> {
        self.expectation(&PauliSum::from_term(&crate::pauli::PauliTerm::new(
            crate::pauli::Phase::ONE,
            word.clone(),
        )))
    }

    /// Largest entrywise modulus difference.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        (&self.m - &other.m)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Row-major `(re, im)` pairs of little-endian `f64`, `16 * 4^n` bytes.
    /// Row and column indices follow the register convention: qubit A is the
    /// most significant bit.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        let dim = self.m.nrows();
        let mut out = Vec::with_capacity(dim * dim * 16);
        for i in 0..dim {
            for j in 0..dim {
                let z = self.m[(i, j)];
                out.extend_from_slice(&z.re.to_le_bytes());
                out.extend_from_slice(&z.im.to_le_bytes());
            }
        }
        out
    }

    pub fn from_le_bytes(n: usize, bytes: &[u8]) -> Result<Self> {
        check_cap(n)?;
        let dim = 1usize << n;
        if bytes.len() != dim * dim * 16 {
            return Err(Error::Parse(format!(
                "state dump has {} bytes, expected {}",
                bytes.len(),
                dim * dim * 16
            )));
        }
        let read = |k: usize| f64::from_le_bytes(bytes[k..k + 8].try_into().expect("8 bytes"));
        let m = DMatrix::from_fn(dim, dim, |i, j| {
            let k = (i * dim + j) * 16;
            Complex64::new(read(k), read(k + 8))
        });
        Ok(DensityMatrix { n, m })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{A, B, C};

    fn word(s: &str) -> PauliWord {
        PauliWord::from_compact(s).unwrap()
    }

    #[test]
    fn basis_projectors() {
        let r = DensityMatrix::basis(&BasisState::zeros(4)).unwrap();
        assert_eq!(r.matrix()[(0, 0)], Complex64::new(1.0, 0.0));
        let r = DensityMatrix::basis(&"1100".parse().unwrap()).unwrap();
        assert_eq!(r.matrix()[(12, 12)], Complex64::new(1.0, 0.0));
        assert_eq!(r.trace(), Complex64::new(1.0, 0.0));
        r.validate(STATE_TOLERANCE).unwrap();
    }

    #[test]
    fn pseudo_pure_limits() {
        let bits = BasisState::zeros(2);
        assert_eq!(
            DensityMatrix::pseudo_pure(1.0, &bits).unwrap(),
            DensityMatrix::basis(&bits).unwrap()
        );
        let mixed = DensityMatrix::pseudo_pure(0.0, &bits).unwrap();
        assert_eq!(mixed, DensityMatrix::maximally_mixed(2).unwrap());
        assert!(mixed.expectation_word(&word("ZZ")).unwrap().abs() < 1e-15);
        assert!(DensityMatrix::pseudo_pure(1.1, &bits).is_err());
    }

    #[test]
    fn bell_pairs_from_both_inputs() {
        let run = |bits: &str| {
            let mut r = DensityMatrix::basis(&bits.parse().unwrap()).unwrap();
            for g in [GateOp::H(A), GateOp::cnot(A, B)] {
                r = r.apply_gate(&g).unwrap();
            }
            r
        };
        let phi = run("0000");
        assert!((phi.expectation_word(&word("XXII")).unwrap() - 1.0).abs() < 1e-12);
        assert!((phi.expectation_word(&word("ZZII")).unwrap() - 1.0).abs() < 1e-12);
        let singlet = run("1100");
        assert!((singlet.expectation_word(&word("XXII")).unwrap() + 1.0).abs() < 1e-12);
        assert!((singlet.expectation_word(&word("ZZII")).unwrap() + 1.0).abs() < 1e-12);
        assert!((singlet.expectation_word(&word("YYII")).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn z_twice_is_identity() {
        let mut r = DensityMatrix::basis(&BasisState::zeros(4)).unwrap();
        r = r.apply_gate(&GateOp::H(C)).unwrap();
        let z2 = r
            .apply_gate(&GateOp::Z(C))
            .unwrap()
            .apply_gate(&GateOp::Z(C))
            .unwrap();
        assert!(r.max_abs_diff(&z2) < 1e-15);
    }

    #[test]
    fn phase_flip_channel() {
        let plus = DensityMatrix::basis(&BasisState::zeros(1))
            .unwrap()
            .apply_gate(&GateOp::H(0))
            .unwrap();
        assert_eq!(plus.apply_phase_flip(0, 0.0).unwrap(), plus);
        let mixed = plus.apply_phase_flip(0, 0.5).unwrap();
        assert!(mixed.max_abs_diff(&DensityMatrix::maximally_mixed(1).unwrap()) < 1e-15);
        for p in [0.1, 0.3, 0.7] {
            let x = plus
                .apply_phase_flip(0, p)
                .unwrap()
                .expectation_word(&word("X"))
                .unwrap();
            assert!((x - (1.0 - 2.0 * p)).abs() < 1e-12);
        }
        assert!(plus.apply_phase_flip(0, -0.5).is_err());
    }

    #[test]
    fn non_hermitian_observable_is_rejected() {
        let r = DensityMatrix::basis(&BasisState::zeros(1)).unwrap();
        let iz = PauliSum::parse("iq_zA", 1).unwrap();
        assert!(matches!(
            r.expectation(&iz),
            Err(Error::NonHermitian { .. })
        ));
    }

    #[test]
    fn dense_cap() {
        assert!(DensityMatrix::maximally_mixed(11).is_err());
        assert!(DensityMatrix::maximally_mixed(0).is_err());
    }

    #[test]
    fn byte_dump_round_trip() {
        let r = DensityMatrix::basis(&BasisState::zeros(2))
            .unwrap()
            .apply_gate(&GateOp::H(0))
            .unwrap()
            .apply_gate(&GateOp::cphase(0, 1))
            .unwrap();
        let bytes = r.to_le_bytes();
        assert_eq!(bytes.len(), 16 * 16);
        assert_eq!(DensityMatrix::from_le_bytes(2, &bytes).unwrap(), r);
        assert!(DensityMatrix::from_le_bytes(2, &bytes[1..]).is_err());
    }
}
