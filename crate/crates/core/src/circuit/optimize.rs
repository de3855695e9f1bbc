// SPDX-License-Identifier: Apache-2.0

//! Peephole cleanup: cancels inverse pairs, fuses same-axis rotations and
//! drops identity rotations. A gate may slide backwards past gates it
//! commutes with to meet its partner.

use super::{Axis, Gate, GateKind, QuantumCircuit};

/// Both gates act on every shared qubit within the same commuting family.
fn commutes(a: &Gate, b: &Gate) -> bool {
    a.qubits.iter().enumerate().all(|(i, q)| match b.qubits.iter().position(|x| x == q) {
        None => true,
        Some(j) => {
            let (x, y) = (a.kind.axis_on(i), b.kind.axis_on(j));
            x == y && x != Axis::Other
        }
    })
}

fn same_set(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && a.iter().all(|q| b.contains(q))
}

enum Merge {
    No,
    Cancel,
    Replace(Gate),
}

fn merge(earlier: &Gate, later: &Gate) -> Merge {
    if !same_set(&earlier.qubits, &later.qubits) {
        return Merge::No;
    }
    let q = earlier.qubits[0];
    if let (Some(a), Some(b)) = (earlier.kind.z_rotation(), later.kind.z_rotation()) {
        return match GateKind::from_z_rotation(a + b) {
            Some(k) => Merge::Replace(Gate::single(k, q)),
            None => Merge::Cancel,
        };
    }
    if let (Some(a), Some(b)) = (earlier.kind.x_rotation(), later.kind.x_rotation()) {
        return match GateKind::from_x_rotation(a + b) {
            Some(k) => Merge::Replace(Gate::single(k, q)),
            None => Merge::Cancel,
        };
    }
    use GateKind::*;
    match (&earlier.kind, &later.kind) {
        (H, H) | (Y, Y) | (CZ, CZ) | (Swap, Swap) | (CCZ, CCZ) => Merge::Cancel,
        (CX, CX) | (CCX, CCX) | (MCT(_), MCT(_))
            if earlier.kind == later.kind && earlier.qubits.last() == later.qubits.last() =>
        {
            Merge::Cancel
        }
        _ => Merge::No,
    }
}

fn is_identity(g: &Gate) -> bool {
    matches!(&g.kind, GateKind::RZ(p) | GateKind::RX(p) if p.is_zero())
}

fn pass(gates: &[Gate]) -> (Vec<Gate>, bool) {
    let mut out: Vec<Option<Gate>> = Vec::with_capacity(gates.len());
    let mut changed = false;
    'next: for g in gates {
        if is_identity(g) {
            changed = true;
            continue;
        }
        for idx in (0..out.len()).rev() {
            let Some(h) = &out[idx] else { continue };
            if !g.qubits.iter().any(|q| h.acts_on(*q)) {
                continue;
            }
            match merge(h, g) {
                Merge::Cancel => {
                    out[idx] = None;
                    changed = true;
                    continue 'next;
                }
                Merge::Replace(m) => {
                    out[idx] = Some(m);
                    changed = true;
                    continue 'next;
                }
                Merge::No if commutes(h, g) => {}
                Merge::No => break,
            }
        }
        out.push(Some(g.clone()));
    }
    (out.into_iter().flatten().collect(), changed)
}

pub(super) fn basic_optimize(c: &QuantumCircuit) -> QuantumCircuit {
    let mut gates = c.gates.clone();
    let mut rounds = 0;
    loop {
        let (next, changed) = pass(&gates);
        gates = next;
        rounds += 1;
        if !changed {
            break;
        }
    }
    log::debug!("basic optimization: {} -> {} gates in {rounds} rounds", c.gates.len(), gates.len());
    QuantumCircuit {
        n_qubits: c.n_qubits,
        gates,
        name: c.name.clone(),
    }
}
