// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use super::QuantumCircuit;

/// Resource counts of a circuit.
///
/// `depth` counts every gate as one layer; `delay` weighs single-qubit gates
/// as 1 and multi-qubit gates as 2 along the critical path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CircuitStats {
    pub gate_count: usize,
    pub t_count: usize,
    pub rz_count: usize,
    pub h_count: usize,
    pub two_qubit_count: usize,
    pub clifford_count: usize,
    pub depth: usize,
    pub delay: usize,
}

impl CircuitStats {
    pub fn of(c: &QuantumCircuit) -> CircuitStats {
        let mut s = CircuitStats {
            gate_count: c.gates.len(),
            ..Default::default()
        };
        let mut level = vec![0usize; c.n_qubits];
        let mut time = vec![0usize; c.n_qubits];
        for g in &c.gates {
            if g.kind.is_t_like() {
                s.t_count += 1;
            }
            if g.kind.z_rotation().is_some_and(|p| !p.is_clifford()) {
                s.rz_count += 1;
            }
            if g.kind == super::GateKind::H {
                s.h_count += 1;
            }
            if g.arity() == 2 {
                s.two_qubit_count += 1;
            }
            if g.kind.is_clifford() {
                s.clifford_count += 1;
            }
            let weight = if g.arity() == 1 { 1 } else { 2 };
            let l = g.qubits.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
            let t = g.qubits.iter().map(|&q| time[q]).max().unwrap_or(0) + weight;
            for &q in &g.qubits {
                level[q] = l;
                time[q] = t;
            }
        }
        s.depth = level.into_iter().max().unwrap_or(0);
        s.delay = time.into_iter().max().unwrap_or(0);
        s
    }
}

impl fmt::Display for CircuitStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gates      : {}", self.gate_count)?;
        writeln!(f, "Clifford   : {}", self.clifford_count)?;
        writeln!(f, "  H-gate   : {}", self.h_count)?;
        writeln!(f, "  2-qubit  : {}", self.two_qubit_count)?;
        writeln!(f, "T-count    : {}", self.t_count)?;
        writeln!(f, "RZ-count   : {}", self.rz_count)?;
        writeln!(f, "Depth      : {}", self.depth)?;
        write!(f, "Delay      : {}", self.delay)
    }
}

#[cfg(test)]
mod tests {
    use crate::circuit::{Gate, Phase, QuantumCircuit};

    #[test]
    fn counts() {
        let c = QuantumCircuit::from_gates(2, [Gate::h(0), Gate::t(0), Gate::t(1), Gate::cx(0, 1)]).unwrap();
        let s = c.statistics();
        assert_eq!((s.t_count, s.h_count, s.two_qubit_count), (2, 1, 1));
        assert_eq!(s.clifford_count, 2);
        assert_eq!(s.depth, 3);
    }

    #[test]
    fn tdg_and_odd_rz_count_as_t() {
        let c = QuantumCircuit::from_gates(
            1,
            [Gate::t(0), Gate::tdg(0), Gate::rz(0, Phase::new(3, 4)), Gate::rz(0, Phase::new(1, 8))],
        )
        .unwrap();
        let s = c.statistics();
        assert_eq!(s.t_count, 3);
        assert_eq!(s.rz_count, 4);
    }

    #[test]
    fn two_qubit_gates_weigh_two_units() {
        let c = QuantumCircuit::from_gates(2, [Gate::cx(0, 1)]).unwrap();
        let s = c.statistics();
        assert_eq!((s.depth, s.delay), (1, 2));
    }

    #[test]
    fn parallel_wires_share_a_layer() {
        let c = QuantumCircuit::from_gates(2, [Gate::h(0), Gate::h(1)]).unwrap();
        assert_eq!(c.statistics().depth, 1);
        assert_eq!(QuantumCircuit::new(3).statistics().depth, 0);
    }
}
