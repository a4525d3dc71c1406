use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::pauli::bit_shift;
use nalgebra::DMatrix;
use num_complex::Complex64;

impl DensityMatrix {
    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.m)
    }

    /// Reduced state on `keep` (in register order), tracing out the rest.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() || keep.len() > self.n {
            return Err(Error::TrivialPartition);
        }
        if let Some(&q) = keep.iter().find(|&&q| q >= self.n) {
            return Err(Error::QubitOutOfRange {
                index: q,
                n: self.n,
            });
        }
        let n = self.n;
        let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let k = keep.len();
        let sub_dim = 1usize << k;
        let spread = |local: usize, qs: &[usize]| -> usize {
            qs.iter()
                .enumerate()
                .filter(|(pos, _)| (local >> (qs.len() - 1 - pos)) & 1 == 1)
                .map(|(_, &q)| 1usize << bit_shift(n, q))
                .sum()
        };
        let kept_idx: Vec<usize> = (0..sub_dim).map(|l| spread(l, &keep)).collect();
        let env_idx: Vec<usize> = (0..1usize << traced.len())
            .map(|l| spread(l, &traced))
            .collect();
        let m = DMatrix::from_fn(sub_dim, sub_dim, |i, j| {
            env_idx
                .iter()
                .map(|&e| self.m[(kept_idx[i] | e, kept_idx[j] | e)])
                .sum::<Complex64>()
        });
        DensityMatrix::from_matrix(k, m)
    }

    /// Partial transpose over the qubits in `subset`.
    pub fn partial_transpose(&self, subset: &[usize]) -> Result<DMatrix<Complex64>> {
        let mask = self.partition_mask(subset)?;
        Ok(DMatrix::from_fn(self.m.nrows(), self.m.ncols(), |i, j| {
            // exchange the subset bits between row and column
            let d = (i ^ j) & mask;
            self.m[(i ^ d, j ^ d)]
        }))
    }

    fn partition_mask(&self, subset: &[usize]) -> Result<usize> {
        let mut mask = 0usize;
        for &q in subset {
            if q >= self.n {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    n: self.n,
                });
            }
            mask |= 1 << bit_shift(self.n, q);
        }
        let full = (1usize << self.n) - 1;
        if mask == 0 || mask == full {
            return Err(Error::TrivialPartition);
        }
        Ok(mask)
    }

    /// `(||rho^{T_S}||_1 - 1) / 2`, computed as the magnitude of the negative
    /// spectrum of the partial transpose. Eigenvalues within
    /// [`NEGATIVITY_FLOOR`] of zero are treated as zero.
    pub fn negativity(&self, partition: &[usize]) -> Result<f64> {
        let pt = self.partial_transpose(partition)?;
        Ok(hermitian_eigenvalues(&pt)
            .iter()
            .filter(|&&e| e < -NEGATIVITY_FLOOR)
            .fold(0.0, |acc, e| acc - e))
    }
}

/// Round-off floor for partial-transpose eigenvalues.
pub const NEGATIVITY_FLOOR: f64 = 1e-13;

pub(crate) fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = herm.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    ev
}
