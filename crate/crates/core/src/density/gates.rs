use crate::circuits::GateOp;
use crate::error::{Error, Result};
use crate::pauli::bit_shift;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Local matrix of a unitary gate and the qubits it acts on, first qubit most
/// significant in the local index.
pub(crate) fn local_unitary(gate: &GateOp) -> Result<(Vec<usize>, DMatrix<Complex64>)> {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let (qs, m) = match *gate {
        GateOp::H(q) => {
            let h = c(FRAC_1_SQRT_2, 0.0);
            (vec![q], DMatrix::from_row_slice(2, 2, &[h, h, h, -h]))
        }
        GateOp::Z(q) => (vec![q], DMatrix::from_row_slice(2, 2, &[l, o, o, -l])),
        GateOp::Cnot { control, target } => (
            vec![control, target],
            DMatrix::from_row_slice(4, 4, &[l, o, o, o, o, l, o, o, o, o, o, l, o, o, l, o]),
        ),
        GateOp::Cphase { control, target } => (
            vec![control, target],
            DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![l, l, l, -l])),
        ),
        GateOp::Swap(a, b) => (vec![a, b], swap_local()),
        GateOp::PartialSwap { a, b, alpha } => (vec![a, b], partial_swap_local(alpha)),
        GateOp::PhaseFlip { .. } => return Err(Error::NotUnitary(gate.to_string())),
    };
    Ok((qs, m))
}

fn swap_local() -> DMatrix<Complex64> {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    DMatrix::from_row_slice(4, 4, &[l, o, o, o, o, o, l, o, o, l, o, o, o, o, o, l])
}

/// `SWAP^alpha = P_sym + e^{i pi alpha} P_anti` on the principal branch.
pub fn partial_swap_local(alpha: f64) -> DMatrix<Complex64> {
    let id = DMatrix::<Complex64>::identity(4, 4);
    let sw = swap_local();
    let half = c(0.5, 0.0);
    let sym = (&id + &sw) * half;
    let anti = (&id - &sw) * half;
    let phase = Complex64::from_polar(1.0, PI * alpha);
    sym + anti * phase
}

/// Offsets of the `2^k` local basis states inside a full index.
fn local_offsets(n: usize, qubits: &[usize]) -> Vec<usize> {
    let k = qubits.len();
    (0..1usize << k)
        .map(|local| {
            qubits
                .iter()
                .enumerate()
                .filter(|(pos, _)| (local >> (k - 1 - pos)) & 1 == 1)
                .map(|(_, &q)| 1usize << bit_shift(n, q))
                .sum()
        })
        .collect()
}

fn gate_mask(n: usize, qubits: &[usize]) -> usize {
    qubits.iter().map(|&q| 1usize << bit_shift(n, q)).sum()
}

/// Dense embedding of a unitary gate on the full `n`-qubit register.
pub fn gate_unitary(gate: &GateOp, n: usize) -> Result<DMatrix<Complex64>> {
    gate.validate(n)?;
    let (qs, local) = local_unitary(gate)?;
    let dim = 1usize << n;
    let offs = local_offsets(n, &qs);
    let mask = gate_mask(n, &qs);
    let mut u = DMatrix::zeros(dim, dim);
    for base in (0..dim).filter(|b| b & mask == 0) {
        for (r, &or) in offs.iter().enumerate() {
            for (cidx, &oc) in offs.iter().enumerate() {
                u[(base | or, base | oc)] = local[(r, cidx)];
            }
        }
    }
    Ok(u)
}

/// `U rho U^dagger` for a gate acting on `qubits`, without forming the full
/// unitary.
pub(crate) fn conjugate_local(
    rho: &DMatrix<Complex64>,
    n: usize,
    qubits: &[usize],
    local: &DMatrix<Complex64>,
) -> DMatrix<Complex64> {
    let dim = 1usize << n;
    let offs = local_offsets(n, qubits);
    let mask = gate_mask(n, qubits);
    let k = offs.len();
    let bases: Vec<usize> = (0..dim).filter(|b| b & mask == 0).collect();
    let mut left = rho.clone();
    let mut buf = vec![Complex64::new(0.0, 0.0); k];
    // rows: U rho
    for col in 0..dim {
        for &base in &bases {
            for (r, &o) in offs.iter().enumerate() {
                buf[r] = rho[(base | o, col)];
            }
            for r in 0..k {
                let mut acc = Complex64::new(0.0, 0.0);
                for (s, v) in buf.iter().enumerate() {
                    acc += local[(r, s)] * v;
                }
                left[(base | offs[r], col)] = acc;
            }
        }
    }
    // columns: (U rho) U^dagger
    let mut out = left.clone();
    for row in 0..dim {
        for &base in &bases {
            for (s, &o) in offs.iter().enumerate() {
                buf[s] = left[(row, base | o)];
            }
            for cidx in 0..k {
                let mut acc = Complex64::new(0.0, 0.0);
                for (s, v) in buf.iter().enumerate() {
                    acc += local[(cidx, s)].conj() * v;
                }
                out[(row, base | offs[cidx])] = acc;
            }
        }
    }
    out
}
