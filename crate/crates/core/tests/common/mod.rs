//! Test-only helpers: an independent state-vector simulator used as an oracle
//! against both library engines, plus random circuit generators.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use qmediator::circuits::{Circuit, GateOp};
use qmediator::pauli::{Pauli, PauliWord};
use rand::Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pure state on `n` qubits, qubit 0 as the most significant bit.
#[derive(Clone, Debug)]
pub struct StateVector {
    pub n: usize,
    pub amp: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(bits: &[bool]) -> Self {
        let n = bits.len();
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        let mut amp = vec![ZERO; 1 << n];
        amp[idx] = ONE;
        StateVector { n, amp }
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    pub fn apply(&mut self, g: &GateOp) {
        match *g {
            GateOp::H(q) => {
                let m = self.bit(q);
                for i in 0..self.amp.len() {
                    if i & m == 0 {
                        let (a, b) = (self.amp[i], self.amp[i | m]);
                        self.amp[i] = (a + b) * FRAC_1_SQRT_2;
                        self.amp[i | m] = (a - b) * FRAC_1_SQRT_2;
                    }
                }
            }
            GateOp::Z(q) => {
                let m = self.bit(q);
                for (i, a) in self.amp.iter_mut().enumerate() {
                    if i & m != 0 {
                        *a = -*a;
                    }
                }
            }
            GateOp::Cnot { control, target } => {
                let (c, t) = (self.bit(control), self.bit(target));
                for i in 0..self.amp.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amp.swap(i, i | t);
                    }
                }
            }
            GateOp::Cphase { control, target } => {
                let m = self.bit(control) | self.bit(target);
                for (i, a) in self.amp.iter_mut().enumerate() {
                    if i & m == m {
                        *a = -*a;
                    }
                }
            }
            GateOp::Swap(a, b) => self.partial_swap(a, b, 1.0),
            GateOp::PartialSwap { a, b, alpha } => self.partial_swap(a, b, alpha),
            GateOp::PhaseFlip { .. } => panic!("channels have no state-vector action"),
        }
    }

    /// On the {01, 10} block: (1+w)/2 on the diagonal and (1-w)/2 off it,
    /// with w = exp(i pi alpha); |00> and |11> are untouched.
    fn partial_swap(&mut self, a: usize, b: usize, alpha: f64) {
        let (ma, mb) = (self.bit(a), self.bit(b));
        let w = Complex64::from_polar(1.0, PI * alpha);
        let (d, o) = ((ONE + w) * 0.5, (ONE - w) * 0.5);
        for i in 0..self.amp.len() {
            if i & ma != 0 && i & mb == 0 {
                let j = (i & !ma) | mb;
                let (x, y) = (self.amp[i], self.amp[j]);
                self.amp[i] = d * x + o * y;
                self.amp[j] = o * x + d * y;
            }
        }
    }

    pub fn run(mut self, c: &Circuit) -> Self {
        for g in c.gates() {
            self.apply(g);
        }
        self
    }

    /// `<psi| P |psi>` computed letter by letter.
    pub fn expectation(&self, word: &PauliWord) -> f64 {
        let mut total = ZERO;
        for (j, &a) in self.amp.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            let mut i = j;
            let mut c = a;
            for (q, p) in word.letters().iter().enumerate() {
                let m = self.bit(q);
                let set = j & m != 0;
                match p {
                    Pauli::I => {}
                    Pauli::X => i ^= m,
                    Pauli::Y => {
                        i ^= m;
                        c *= if set { -I } else { I };
                    }
                    Pauli::Z => {
                        if set {
                            c = -c;
                        }
                    }
                }
            }
            total += self.amp[i].conj() * c;
        }
        assert!(total.im.abs() < 1e-12);
        total.re
    }

    /// Reduced 4x4 state of qubits `(a, b)`, `a` as the high bit.
    pub fn reduced_pair(&self, a: usize, b: usize) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(4, 4);
        let (ma, mb) = (self.bit(a), self.bit(b));
        let local = |i: usize| (((i & ma != 0) as usize) << 1) | (i & mb != 0) as usize;
        for i in 0..self.amp.len() {
            for j in 0..self.amp.len() {
                if (i & !(ma | mb)) == (j & !(ma | mb)) {
                    out[(local(i), local(j))] += self.amp[i] * self.amp[j].conj();
                }
            }
        }
        out
    }
}

/// Negativity of a two-qubit state across its two qubits, via the real
/// symmetric embedding of the partial transpose (every eigenvalue doubled).
pub fn pair_negativity(rho: &DMatrix<Complex64>) -> f64 {
    let mut pt = DMatrix::<Complex64>::zeros(4, 4);
    // transpose the second qubit: index (a b, a' b') -> (a b', a' b)
    for r in 0..4 {
        for c in 0..4 {
            let (a, b, a2, b2) = (r >> 1, r & 1, c >> 1, c & 1);
            pt[((a << 1) | b2, (a2 << 1) | b)] = rho[(r, c)];
        }
    }
    let mut real = DMatrix::<f64>::zeros(8, 8);
    for r in 0..4 {
        for c in 0..4 {
            let z = pt[(r, c)];
            real[(r, c)] = z.re;
            real[(r + 4, c + 4)] = z.re;
            real[(r, c + 4)] = -z.im;
            real[(r + 4, c)] = z.im;
        }
    }
    let ev = SymmetricEigen::new(real).eigenvalues;
    let neg: f64 = ev.iter().filter(|&&e| e < -1e-13).map(|e| -e).sum();
    neg / 2.0
}

/// Random Clifford gate from {H, Z, CNOT, CPHASE, SWAP}.
pub fn random_clifford_gate<R: Rng>(rng: &mut R, n: usize) -> GateOp {
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    match rng.gen_range(0..5) {
        0 => GateOp::H(a),
        1 => GateOp::Z(a),
        2 => GateOp::cnot(a, b),
        3 => GateOp::cphase(a, b),
        _ => GateOp::Swap(a, b),
    }
}

/// Random Clifford circuit with slice marks sprinkled between gates.
pub fn random_clifford_circuit<R: Rng>(rng: &mut R, n: usize, max_depth: usize) -> Circuit {
    let depth = rng.gen_range(1..=max_depth);
    let mut c = Circuit::new(n);
    for _ in 0..depth {
        c.push(random_clifford_gate(rng, n)).unwrap();
        if rng.gen_bool(0.3) {
            c.mark_slice().unwrap();
        }
    }
    c
}

pub fn random_bits<R: Rng>(rng: &mut R, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.gen_bool(0.5)).collect()
}

/// Every Pauli word of weight 1 or 2 on `n` qubits.
pub fn low_weight_words(n: usize) -> Vec<PauliWord> {
    let non_id = [Pauli::X, Pauli::Y, Pauli::Z];
    let mut out = Vec::new();
    for a in 0..n {
        for &p in &non_id {
            let mut l = vec![Pauli::I; n];
            l[a] = p;
            out.push(PauliWord::from_letters(l.clone()));
            for b in a + 1..n {
                for &q in &non_id {
                    let mut l2 = l.clone();
                    l2[b] = q;
                    out.push(PauliWord::from_letters(l2));
                }
            }
        }
    }
    out
}
