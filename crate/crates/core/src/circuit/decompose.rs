// SPDX-License-Identifier: Apache-2.0

use super::{CircuitError, Gate, GateKind, Phase, QuantumCircuit};

/// Multi-controlled Z on `qubits` as a sum of parity phases:
/// `x1·…·xm = 2^(1-m) Σ_{S≠∅} (-1)^(|S|-1) parity_S(x)`.
///
/// Returns `(support, angle)` pairs in increasing subset-mask order; the
/// angle is the phase applied to the parity of the support.
pub(crate) fn multi_controlled_z_terms(qubits: &[usize]) -> Vec<(Vec<usize>, Phase)> {
    let m = qubits.len();
    assert!((1..=16).contains(&m), "unsupported control count");
    let unit = Phase::new(1, 1i64 << (m - 1));
    (1u32..(1 << m))
        .map(|mask| {
            let support: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| qubits[i]).collect();
            let angle = if support.len() % 2 == 1 { unit } else { -unit };
            (support, angle)
        })
        .collect()
}

fn push_parity_rotation(out: &mut Vec<Gate>, support: &[usize], angle: Phase) {
    let (&target, rest) = support.split_last().expect("nonempty support");
    for &q in rest {
        out.push(Gate::cx(q, target));
    }
    if let Some(kind) = GateKind::from_z_rotation(angle) {
        out.push(Gate::single(kind, target));
    }
    for &q in rest.iter().rev() {
        out.push(Gate::cx(q, target));
    }
}

fn expand_mcz(out: &mut Vec<Gate>, qubits: &[usize]) {
    for (support, angle) in multi_controlled_z_terms(qubits) {
        push_parity_rotation(out, &support, angle);
    }
}

fn expand(g: &Gate, out: &mut Vec<Gate>) -> bool {
    match g.kind {
        GateKind::CCZ => expand_mcz(out, &g.qubits),
        GateKind::CCX | GateKind::MCT(_) => {
            let target = *g.qubits.last().unwrap();
            out.push(Gate::h(target));
            expand_mcz(out, &g.qubits);
            out.push(Gate::h(target));
        }
        _ => return false,
    }
    true
}

pub(super) fn decompose_multi_controlled(c: &QuantumCircuit) -> QuantumCircuit {
    let mut gates = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        if !expand(g, &mut gates) {
            gates.push(g.clone());
        }
    }
    QuantumCircuit {
        n_qubits: c.n_qubits,
        gates,
        name: c.name.clone(),
    }
}

pub(super) fn to_clifford_rz(c: &QuantumCircuit) -> Result<QuantumCircuit, CircuitError> {
    let mut gates = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        if expand(g, &mut gates) {
            continue;
        }
        match &g.kind {
            GateKind::RX(p) if !p.is_clifford() => {
                let q = g.qubits[0];
                gates.extend([Gate::h(q), Gate::rz(q, *p), Gate::h(q)]);
            }
            GateKind::Custom(cg) => return Err(CircuitError::Undecomposable(cg.name.clone())),
            _ => gates.push(g.clone()),
        }
    }
    Ok(QuantumCircuit {
        n_qubits: c.n_qubits,
        gates,
        name: c.name.clone(),
    })
}
