// SPDX-License-Identifier: Apache-2.0

//! Gate-level netlists.
//!
//! A [`QuantumCircuit`] is an ordered gate list over logical qubits. List
//! order is time order, so the first gate is applied first. Every other
//! representation in the crate converts to and from this type.

pub(crate) mod decompose;
mod gate;
mod optimize;
mod phase;
mod qasm;
pub mod random;
mod stats;

use thiserror::Error;

pub use gate::{CustomGate, Gate, GateKind, GateRegistry};
pub(crate) use gate::Axis;
pub use phase::Phase;
pub use qasm::{parse_qasm, parse_qasm_with, write_qasm};
pub use stats::CircuitStats;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate `{gate}` expects {expected} qubit(s), got {got}")]
    Arity {
        gate: String,
        expected: usize,
        got: usize,
    },
    #[error("gate `{gate}` uses qubit {qubit} more than once")]
    DuplicateQubit { gate: String, qubit: usize },
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },
    #[error("gate `{0}` has no registered inverse")]
    NoInverse(String),
    #[error("gate `{0}` cannot be decomposed into the builtin gate set")]
    Undecomposable(String),
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: unknown gate `{name}`")]
    UnknownGate { line: usize, name: String },
    #[error("line {line}: only one qreg is supported")]
    MultipleQregs { line: usize },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct QuantumCircuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
    pub name: String,
}

impl QuantumCircuit {
    pub fn new(n_qubits: usize) -> Self {
        QuantumCircuit {
            n_qubits,
            gates: Vec::new(),
            name: String::new(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn from_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self, CircuitError> {
        let mut c = QuantumCircuit::new(n_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self, CircuitError> {
        if let Some(&q) = gate.qubits.iter().find(|&&q| q >= self.n_qubits) {
            return Err(CircuitError::QubitOutOfRange {
                qubit: q,
                n_qubits: self.n_qubits,
            });
        }
        self.gates.push(gate);
        Ok(self)
    }

    pub fn add(&mut self, kind: GateKind, qubits: &[usize]) -> Result<&mut Self, CircuitError> {
        self.push(Gate::new(kind, qubits.to_vec())?)
    }

    /// Reversed gate list with every gate replaced by its inverse.
    pub fn adjoint(&self) -> Result<QuantumCircuit, CircuitError> {
        let gates = self
            .gates
            .iter()
            .rev()
            .map(|g| g.inverse().ok_or_else(|| CircuitError::NoInverse(g.kind.name().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QuantumCircuit {
            n_qubits: self.n_qubits,
            gates,
            name: self.name.clone(),
        })
    }

    /// Gates of `self` followed by gates of `other`.
    pub fn compose(&self, other: &QuantumCircuit) -> Result<QuantumCircuit, CircuitError> {
        if self.n_qubits != other.n_qubits {
            return Err(CircuitError::QubitCountMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        let mut out = self.clone();
        out.gates.extend(other.gates.iter().cloned());
        Ok(out)
    }

    pub fn statistics(&self) -> CircuitStats {
        CircuitStats::of(self)
    }

    pub fn basic_optimize(&self) -> QuantumCircuit {
        optimize::basic_optimize(self)
    }

    /// Rewrites CCX, CCZ and MCT gates into CX and Z rotations.
    pub fn decompose_multi_controlled(&self) -> QuantumCircuit {
        decompose::decompose_multi_controlled(self)
    }

    /// Rewrites into CX, CZ, SWAP and single-qubit Clifford gates plus Z
    /// rotations: multi-controlled gates are expanded and non-Clifford X
    /// rotations are conjugated by H.
    pub fn to_clifford_rz(&self) -> Result<QuantumCircuit, CircuitError> {
        decompose::to_clifford_rz(self)
    }

    pub fn has_custom_gates(&self) -> bool {
        self.gates.iter().any(|g| !g.kind.is_builtin())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> QuantumCircuit {
        QuantumCircuit::from_gates(2, [Gate::h(0), Gate::t(0), Gate::cx(0, 1), Gate::rz(1, Phase::new(1, 8))]).unwrap()
    }

    #[test]
    fn push_rejects_out_of_range_qubits() {
        let mut c = QuantumCircuit::new(2);
        assert!(matches!(
            c.push(Gate::cx(0, 2)),
            Err(CircuitError::QubitOutOfRange { qubit: 2, n_qubits: 2 })
        ));
    }

    #[test]
    fn adjoint_reverses_and_inverts() {
        let c = QuantumCircuit::from_gates(1, [Gate::h(0), Gate::t(0)]).unwrap();
        let a = c.adjoint().unwrap();
        assert_eq!(a.gates, vec![Gate::tdg(0), Gate::h(0)]);
        let cx = QuantumCircuit::from_gates(2, [Gate::cx(0, 1)]).unwrap();
        assert_eq!(cx.adjoint().unwrap(), cx);
        assert_eq!(sample().adjoint().unwrap().adjoint().unwrap(), sample());
    }

    #[test]
    fn adjoint_fails_without_inverse() {
        let mut c = QuantumCircuit::new(1);
        c.add(
            GateKind::Custom(std::sync::Arc::new(CustomGate {
                name: "blob".into(),
                arity: 1,
                matrix: None,
                inverse: None,
            })),
            &[0],
        )
        .unwrap();
        assert_eq!(c.adjoint().unwrap_err(), CircuitError::NoInverse("blob".into()));
    }

    #[test]
    fn compose_concatenates() {
        let c = sample();
        assert_eq!(c.compose(&c.adjoint().unwrap()).unwrap().len(), 2 * c.len());
        assert_eq!(QuantumCircuit::new(2).compose(&c).unwrap().gates, c.gates);
        assert!(matches!(
            c.compose(&QuantumCircuit::new(3)),
            Err(CircuitError::QubitCountMismatch { .. })
        ));
    }
}
