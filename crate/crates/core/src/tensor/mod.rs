// SPDX-License-Identifier: Apache-2.0

//! Dense unitaries for small circuits and the equivalence oracle.
//!
//! Matrices are row-major with qubit 0 as the most significant bit of the
//! basis index.

mod contract;

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{GateKind, QuantumCircuit};

pub use contract::unitary_of_zx;

/// Largest register the dense oracle accepts.
pub const MAX_QUBITS: usize = 10;
pub const EQUIV_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("{n} qubits exceeds the dense-oracle cap of {cap}")]
    QubitCap { n: usize, cap: usize },
    #[error("gate `{0}` has no known unitary")]
    NoUnitary(String),
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },
    #[error("diagram has {inputs} inputs and {outputs} outputs")]
    BoundaryMismatch { inputs: usize, outputs: usize },
    #[error("diagram does not denote a unitary (deviation {0:e})")]
    NotUnitary(f64),
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    n: usize,
    entries: Vec<Complex64>,
}

impl Unitary {
    pub fn identity(n: usize) -> Result<Unitary, TensorError> {
        if n > MAX_QUBITS {
            return Err(TensorError::QubitCap { n, cap: MAX_QUBITS });
        }
        let dim = 1 << n;
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = ONE;
        }
        Ok(Unitary { n, entries })
    }

    pub(crate) fn from_entries(n: usize, entries: Vec<Complex64>) -> Unitary {
        debug_assert_eq!(entries.len(), 1 << (2 * n));
        Unitary { n, entries }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Unitary {
        let dim = self.dim();
        let mut entries = vec![ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                entries[c * dim + r] = self.entries[r * dim + c].conj();
            }
        }
        Unitary { n: self.n, entries }
    }

    /// `self · other`
    pub fn mul(&self, other: &Unitary) -> Result<Unitary, TensorError> {
        if self.n != other.n {
            return Err(TensorError::DimensionMismatch { left: self.n, right: other.n });
        }
        let dim = self.dim();
        let mut entries = vec![ZERO; dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = self.entries[r * dim + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.entries[k * dim..(k + 1) * dim];
                for (e, b) in entries[r * dim..(r + 1) * dim].iter_mut().zip(row) {
                    *e += a * b;
                }
            }
        }
        Ok(Unitary { n: self.n, entries })
    }

    pub fn scale(&self, s: Complex64) -> Unitary {
        Unitary {
            n: self.n,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// Frobenius distance between `U·U†` and the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let p = self.mul(&self.adjoint()).expect("same size");
        let dim = self.dim();
        let mut acc = 0.0;
        for r in 0..dim {
            for c in 0..dim {
                let target = if r == c { ONE } else { ZERO };
                acc += (p.entries[r * dim + c] - target).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Left-multiplies by `m` (a `2^k × 2^k` matrix) acting on `qubits`,
    /// whose first entry is the most significant local bit.
    pub fn apply(&mut self, m: &[Complex64], qubits: &[usize]) {
        let k = qubits.len();
        let local = 1usize << k;
        debug_assert_eq!(m.len(), local * local);
        let dim = self.dim();
        let masks: Vec<usize> = qubits.iter().map(|&q| 1 << (self.n - 1 - q)).collect();
        let all: usize = masks.iter().sum();
        let offsets: Vec<usize> = (0..local)
            .map(|l| (0..k).filter(|&i| l >> (k - 1 - i) & 1 == 1).map(|i| masks[i]).sum())
            .collect();
        let mut v = vec![ZERO; local];
        for base in (0..dim).filter(|b| b & all == 0) {
            for c in 0..dim {
                for l in 0..local {
                    v[l] = self.entries[(base + offsets[l]) * dim + c];
                }
                for r in 0..local {
                    let mut acc = ZERO;
                    for l in 0..local {
                        acc += m[r * local + l] * v[l];
                    }
                    self.entries[(base + offsets[r]) * dim + c] = acc;
                }
            }
        }
    }
}

fn diag(d: &[Complex64]) -> Vec<Complex64> {
    let n = d.len();
    let mut m = vec![ZERO; n * n];
    for (i, &x) in d.iter().enumerate() {
        m[i * n + i] = x;
    }
    m
}

fn controlled_x_matrix(arity: usize) -> Vec<Complex64> {
    let dim = 1 << arity;
    let mut m = diag(&vec![ONE; dim]);
    let (a, b) = (dim - 2, dim - 1);
    m[a * dim + a] = ZERO;
    m[b * dim + b] = ZERO;
    m[a * dim + b] = ONE;
    m[b * dim + a] = ONE;
    m
}

/// Matrix of a gate kind with the first operand as most significant bit.
pub fn gate_matrix(kind: &GateKind) -> Result<Vec<Complex64>, TensorError> {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let e = |theta: f64| Complex64::from_polar(1.0, theta);
    Ok(match kind {
        GateKind::H => vec![h, h, h, -h],
        GateKind::X => vec![ZERO, ONE, ONE, ZERO],
        GateKind::Y => vec![ZERO, -I, I, ZERO],
        GateKind::Z => diag(&[ONE, -ONE]),
        GateKind::S => diag(&[ONE, I]),
        GateKind::Sdg => diag(&[ONE, -I]),
        GateKind::T => diag(&[ONE, e(std::f64::consts::FRAC_PI_4)]),
        GateKind::Tdg => diag(&[ONE, e(-std::f64::consts::FRAC_PI_4)]),
        GateKind::SX | GateKind::SXdg => {
            let (p, q) = (Complex64::new(0.5, 0.5), Complex64::new(0.5, -0.5));
            if *kind == GateKind::SX {
                vec![p, q, q, p]
            } else {
                vec![q, p, p, q]
            }
        }
        GateKind::RZ(p) => {
            let t = p.to_radians();
            diag(&[e(-t / 2.0), e(t / 2.0)])
        }
        GateKind::RX(p) => {
            let t = p.to_radians() / 2.0;
            let (c, s) = (Complex64::new(t.cos(), 0.0), Complex64::new(0.0, -t.sin()));
            vec![c, s, s, c]
        }
        GateKind::CX => controlled_x_matrix(2),
        GateKind::CZ => diag(&[ONE, ONE, ONE, -ONE]),
        GateKind::Swap => {
            let mut m = vec![ZERO; 16];
            for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
                m[r * 4 + c] = ONE;
            }
            m
        }
        GateKind::CCX => controlled_x_matrix(3),
        GateKind::MCT(k) => controlled_x_matrix(k + 1),
        GateKind::CCZ => {
            let mut d = vec![ONE; 8];
            d[7] = -ONE;
            diag(&d)
        }
        GateKind::Custom(c) => c.matrix.clone().ok_or_else(|| TensorError::NoUnitary(c.name.clone()))?,
    })
}

pub fn unitary_of_circuit(c: &QuantumCircuit) -> Result<Unitary, TensorError> {
    let mut u = Unitary::identity(c.n_qubits)?;
    for g in &c.gates {
        let m = gate_matrix(&g.kind)?;
        u.apply(&m, &g.qubits);
    }
    Ok(u)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    /// `|tr(U†V)| / 2^n`
    pub fidelity: f64,
    /// Largest entry of `|e^{iφ}U - V|` with `φ` the best global phase.
    pub worst_entry_deviation: f64,
}

pub fn equiv_up_to_global_phase(u: &Unitary, v: &Unitary) -> Result<EquivalenceReport, TensorError> {
    if u.n != v.n {
        return Err(TensorError::DimensionMismatch { left: u.n, right: v.n });
    }
    let tr: Complex64 = u.entries.iter().zip(&v.entries).map(|(a, b)| a.conj() * b).sum();
    let fidelity = (tr.norm() / u.dim() as f64).min(1.0);
    let phase = if tr.norm() > 0.0 { tr / tr.norm() } else { ONE };
    let worst = u
        .entries
        .iter()
        .zip(&v.entries)
        .map(|(a, b)| (a * phase - b).norm())
        .fold(0.0, f64::max);
    Ok(EquivalenceReport {
        equivalent: fidelity >= 1.0 - EQUIV_TOLERANCE,
        fidelity,
        worst_entry_deviation: worst,
    })
}

/// Convenience wrapper over two circuits.
pub fn circuits_equivalent(a: &QuantumCircuit, b: &QuantumCircuit) -> Result<EquivalenceReport, TensorError> {
    equiv_up_to_global_phase(&unitary_of_circuit(a)?, &unitary_of_circuit(b)?)
}
