// SPDX-License-Identifier: Apache-2.0

//! Seeded random circuits for fuzzing and benchmarks. The generator is a
//! ChaCha stream, so a seed yields the same circuit on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Gate, GateKind, Phase, QuantumCircuit};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateFamily {
    /// H, S, Sdg, X, Z, CX, CZ
    Clifford,
    /// Clifford plus T and Tdg
    CliffordT,
    /// Every builtin kind with arity ≤ 3 plus arbitrary dyadic rotations.
    General,
}

#[derive(Debug, Clone)]
pub struct RandomCircuitConfig {
    pub n_qubits: usize,
    pub n_gates: usize,
    pub family: GateFamily,
}

impl RandomCircuitConfig {
    pub fn clifford(n_qubits: usize, n_gates: usize) -> Self {
        RandomCircuitConfig {
            n_qubits,
            n_gates,
            family: GateFamily::Clifford,
        }
    }

    pub fn clifford_t(n_qubits: usize, n_gates: usize) -> Self {
        RandomCircuitConfig {
            n_qubits,
            n_gates,
            family: GateFamily::CliffordT,
        }
    }

    pub fn general(n_qubits: usize, n_gates: usize) -> Self {
        RandomCircuitConfig {
            n_qubits,
            n_gates,
            family: GateFamily::General,
        }
    }
}

fn distinct(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(k);
    while out.len() < k {
        let q = rng.gen_range(0..n);
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out
}

pub fn random_circuit(cfg: &RandomCircuitConfig, seed: u64) -> QuantumCircuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cfg.n_qubits;
    let mut kinds: Vec<GateKind> = vec![GateKind::H, GateKind::S, GateKind::Sdg, GateKind::X, GateKind::Z];
    if cfg.family != GateFamily::Clifford {
        kinds.extend([GateKind::T, GateKind::Tdg]);
    }
    if cfg.family == GateFamily::General {
        kinds.extend([GateKind::Y, GateKind::SX, GateKind::SXdg, GateKind::RZ(Phase::zero()), GateKind::RX(Phase::zero())]);
    }
    let mut multi: Vec<GateKind> = Vec::new();
    if n >= 2 {
        multi.extend([GateKind::CX, GateKind::CZ]);
        if cfg.family == GateFamily::General {
            multi.push(GateKind::Swap);
        }
    }
    if n >= 3 && cfg.family == GateFamily::General {
        multi.extend([GateKind::CCX, GateKind::CCZ]);
    }

    let mut c = QuantumCircuit::new(n).with_name(format!("random-{seed}"));
    for _ in 0..cfg.n_gates {
        // two-qubit gates appear with probability ~1/3
        let kind = if !multi.is_empty() && rng.gen_range(0..3) == 0 {
            multi[rng.gen_range(0..multi.len())].clone()
        } else {
            match kinds[rng.gen_range(0..kinds.len())] {
                GateKind::RZ(_) => GateKind::RZ(Phase::new(rng.gen_range(1..32), 16)),
                GateKind::RX(_) => GateKind::RX(Phase::new(rng.gen_range(1..32), 16)),
                ref k => k.clone(),
            }
        };
        let qubits = distinct(&mut rng, n, kind.arity());
        c.gates.push(Gate::new(kind, qubits).expect("distinct qubits"));
    }
    c
}
