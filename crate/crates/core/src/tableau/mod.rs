// SPDX-License-Identifier: Apache-2.0

//! Circuits as sequences of Clifford operators and Pauli-rotation groups.
//!
//! Elements apply in list order. A rotation `(P, θ)` is `exp(−iθ/2·P)`, so
//! `RZ(θ)` on qubit `q` is the rotation `(Z_q, θ)`.

mod clifford;
mod optimize;
mod pauli;
mod phasepoly;

use std::fmt;

use thiserror::Error;

pub use clifford::CliffordTableau;
pub use optimize::{full_optimize, hopt, tmerge, FullReport, MAX_FULL_ROUNDS};
pub use pauli::{Pauli, PauliRotation, PauliString};
pub use phasepoly::{
    apply_clifford_correction, optimize_phase_polynomials, properize, signature, todd, todd_once, PhasePolynomial,
    Signature,
};

use crate::circuit::{Gate, GateKind, Phase, QuantumCircuit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("gate `{0}` is not Clifford")]
    NotClifford(String),
    #[error("gate `{0}` has no tableau form; decompose it into Clifford and Z-rotation gates first")]
    Unsupported(String),
    #[error("angle {0} is not a multiple of π/4")]
    NotCliffordT(Phase),
    #[error("phase polynomial has an even coefficient; properize it first")]
    NotProper,
    #[error("signatures differ; the polynomials are not Clifford-equivalent")]
    SignatureMismatch,
    #[error("qubit count mismatch: {0} vs {1}")]
    QubitMismatch(usize, usize),
    #[error("{0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableauElement {
    Clifford(CliffordTableau),
    Rotations(Vec<PauliRotation>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    elements: Vec<TableauElement>,
}

impl Tableau {
    pub fn new(n: usize) -> Self {
        Tableau { n, elements: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[TableauElement] {
        &self.elements
    }

    pub(crate) fn elements_mut(&mut self) -> &mut Vec<TableauElement> {
        &mut self.elements
    }

    pub fn push(&mut self, e: TableauElement) -> Result<(), TableauError> {
        let n = match &e {
            TableauElement::Clifford(c) => c.n_qubits(),
            TableauElement::Rotations(rs) => rs.first().map_or(self.n, |r| r.pauli().n_qubits()),
        };
        if n != self.n {
            return Err(TableauError::QubitMismatch(self.n, n));
        }
        self.elements.push(e);
        Ok(())
    }

    pub fn rotations(&self) -> impl Iterator<Item = &PauliRotation> {
        self.elements.iter().flat_map(|e| match e {
            TableauElement::Rotations(rs) => rs.as_slice(),
            TableauElement::Clifford(_) => &[],
        })
    }

    pub fn t_count(&self) -> usize {
        self.rotations().filter(|r| r.is_t_like()).count()
    }

    /// Rotations whose angle is not a multiple of π/2.
    pub fn non_clifford_count(&self) -> usize {
        self.rotations().filter(|r| !r.is_clifford()).count()
    }

    /// `[rotations, clifford]`: Clifford gates are pushed to the end and each
    /// rotation is conjugated back through the Clifford gates before it.
    pub fn from_circuit(c: &QuantumCircuit) -> Result<Tableau, TableauError> {
        let n = c.n_qubits;
        // inverse of the Clifford prefix seen so far
        let mut inv = CliffordTableau::identity(n);
        let mut rotations = Vec::new();
        for g in &c.gates {
            let q = g.qubits.first().copied().unwrap_or(0);
            let rot = match (g.kind.z_rotation(), g.kind.x_rotation()) {
                (Some(p), _) if !p.is_clifford() => Some((Pauli::Z, p)),
                (_, Some(p)) if !p.is_clifford() => Some((Pauli::X, p)),
                _ => None,
            };
            if let Some((axis, angle)) = rot {
                let p = inv.conjugate(&PauliString::single(n, q, axis));
                rotations.extend(PauliRotation::new(p, angle));
                continue;
            }
            if !g.kind.is_clifford() {
                return Err(TableauError::Unsupported(g.kind.to_string()));
            }
            inv.prepend_gate(&g.inverse().expect("builtin Clifford gates invert"))?;
        }
        Ok(Tableau {
            n,
            elements: vec![TableauElement::Rotations(rotations), TableauElement::Clifford(inv.inverse())],
        })
    }

    pub fn to_circuit(&self) -> QuantumCircuit {
        let mut gates = Vec::new();
        for e in &self.elements {
            match e {
                TableauElement::Clifford(c) => gates.extend(c.to_circuit().gates),
                TableauElement::Rotations(rs) => {
                    for r in rs {
                        synthesize_rotation(r, &mut gates);
                    }
                }
            }
        }
        QuantumCircuit::from_gates(self.n, gates).expect("synthesized gates stay in range")
    }
}

/// Basis change onto `Z`, a CX ladder into the last support qubit, the
/// Z rotation, and the ladder undone.
fn synthesize_rotation(r: &PauliRotation, gates: &mut Vec<Gate>) {
    let p = r.pauli();
    let support: Vec<usize> = p.support().collect();
    let Some(&target) = support.last() else {
        return;
    };
    let mut pre = Vec::new();
    for &q in &support {
        match p.get(q) {
            Pauli::X => pre.push(Gate::h(q)),
            Pauli::Y => pre.extend([Gate::sdg(q), Gate::h(q)]),
            _ => {}
        }
    }
    for &q in &support[..support.len() - 1] {
        pre.push(Gate::cx(q, target));
    }
    gates.extend(pre.iter().cloned());
    if let Some(kind) = GateKind::from_z_rotation(r.angle()) {
        gates.push(Gate::single(kind, target));
    }
    gates.extend(pre.iter().rev().map(|g| g.inverse().expect("builtin gates invert")));
}

/// ```text
/// tableau 2
/// rotations 1
/// ZZ π/4
/// clifford
/// X0 -> +XI
/// X1 -> +IX
/// Z0 -> +ZI
/// Z1 -> +IZ
/// ```
impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tableau {}", self.n)?;
        for e in &self.elements {
            match e {
                TableauElement::Clifford(c) => write!(f, "clifford\n{c}")?,
                TableauElement::Rotations(rs) => {
                    writeln!(f, "rotations {}", rs.len())?;
                    for r in rs {
                        writeln!(f, "{r}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Tableau {
    type Err = TableauError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |n: usize, m: &str| TableauError::Format(format!("line {n}: {m}"));
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let n = match lines.next() {
            Some((ln, l)) => l
                .strip_prefix("tableau ")
                .and_then(|k| k.trim().parse::<usize>().ok())
                .ok_or_else(|| err(ln, "expected `tableau <n>`"))?,
            None => return Err(TableauError::Format("empty input".into())),
        };
        let mut t = Tableau::new(n);
        let pauli = |ln: usize, s: &str| -> Result<PauliString, TableauError> {
            let p: PauliString = s.parse().map_err(|e: TableauError| err(ln, &e.to_string()))?;
            if p.n_qubits() != n {
                return Err(err(ln, &format!("Pauli string `{s}` does not have {n} qubits")));
            }
            Ok(p)
        };
        while let Some((ln, line)) = lines.next() {
            if line == "clifford" {
                let mut rows = Vec::with_capacity(2 * n);
                for k in 0..2 * n {
                    let (rl, row) = lines.next().ok_or_else(|| err(ln, "truncated clifford block"))?;
                    let expect = if k < n { format!("X{k}") } else { format!("Z{}", k - n) };
                    let (lhs, rhs) = row.split_once("->").ok_or_else(|| err(rl, "expected `G -> P`"))?;
                    if lhs.trim() != expect {
                        return Err(err(rl, &format!("expected row for {expect}")));
                    }
                    rows.push(pauli(rl, rhs.trim())?);
                }
                let z = rows.split_off(n);
                let c = CliffordTableau::from_rows(rows, z).map_err(|e| err(ln, &e.to_string()))?;
                t.elements.push(TableauElement::Clifford(c));
            } else if let Some(k) = line.strip_prefix("rotations") {
                let k: usize = k.trim().parse().map_err(|_| err(ln, "expected `rotations <count>`"))?;
                let mut rs = Vec::with_capacity(k);
                for _ in 0..k {
                    let (rl, row) = lines.next().ok_or_else(|| err(ln, "truncated rotation block"))?;
                    let (p, a) = row.split_once(' ').ok_or_else(|| err(rl, "expected `PAULI ANGLE`"))?;
                    let angle: Phase = a.trim().parse().map_err(|e: String| err(rl, &e))?;
                    rs.extend(PauliRotation::new(pauli(rl, p)?, angle));
                }
                t.elements.push(TableauElement::Rotations(rs));
            } else {
                return Err(err(ln, &format!("unexpected `{line}`")));
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::random::{random_circuit, RandomCircuitConfig};
    use crate::tensor::circuits_equivalent;
    use proptest::prelude::*;

    fn circ(n: usize, gates: impl IntoIterator<Item = Gate>) -> QuantumCircuit {
        QuantumCircuit::from_gates(n, gates).unwrap()
    }

    fn only_rotations(t: &Tableau) -> Vec<String> {
        t.rotations().map(ToString::to_string).collect()
    }

    #[test]
    fn s_gate_is_pure_clifford() {
        let t = Tableau::from_circuit(&circ(1, [Gate::s(0)])).unwrap();
        assert_eq!(only_rotations(&t), Vec::<String>::new());
        let TableauElement::Clifford(c) = &t.elements()[1] else { panic!() };
        assert_eq!(c.x_image(0).to_string(), "+Y");
        assert_eq!(c.z_image(0).to_string(), "+Z");
    }

    #[test]
    fn t_gate_is_one_rotation() {
        let t = Tableau::from_circuit(&circ(1, [Gate::t(0)])).unwrap();
        assert_eq!(only_rotations(&t), ["Z π/4"]);
        let TableauElement::Clifford(c) = &t.elements()[1] else { panic!() };
        assert!(c.is_identity());
    }

    #[test]
    fn rotation_after_h_is_about_x() {
        let c = circ(1, [Gate::h(0), Gate::t(0)]);
        let t = Tableau::from_circuit(&c).unwrap();
        assert_eq!(only_rotations(&t), ["X π/4"]);
        assert!(circuits_equivalent(&c, &t.to_circuit()).unwrap().equivalent);
    }

    #[test]
    fn zz_rotation_is_a_cx_ladder() {
        let mut t = Tableau::new(2);
        let r = PauliRotation::new("ZZ".parse().unwrap(), Phase::new(1, 4)).unwrap();
        t.push(TableauElement::Rotations(vec![r])).unwrap();
        assert_eq!(t.to_circuit().gates, [Gate::cx(0, 1), Gate::t(1), Gate::cx(0, 1)]);
        assert_eq!(Tableau::new(3).to_circuit().len(), 0);
    }

    #[test]
    fn rejects_multi_controlled_gates() {
        let c = circ(3, [Gate::new(GateKind::CCZ, vec![0, 1, 2]).unwrap()]);
        assert!(matches!(Tableau::from_circuit(&c), Err(TableauError::Unsupported(_))));
    }

    #[test]
    fn text_roundtrip() {
        let c = random_circuit(&RandomCircuitConfig::clifford_t(3, 30), 9);
        let t = Tableau::from_circuit(&c).unwrap();
        let text = t.to_string();
        assert!(text.starts_with("tableau 3\nrotations "));
        let back: Tableau = text.parse().unwrap();
        assert_eq!(back, t);
        assert!("tableau 1\nclifford\nX0 -> +X\nZ0 -> +X\n".parse::<Tableau>().is_err());
        assert!("tableau 1\nrotations 1\nZZ π/4\n".parse::<Tableau>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn roundtrip_is_equivalent(n in 1usize..6, len in 0usize..40, seed in any::<u64>()) {
            let c = random_circuit(&RandomCircuitConfig::clifford_t(n, len), seed);
            let t = Tableau::from_circuit(&c).unwrap();
            prop_assert_eq!(t.t_count(), c.statistics().t_count);
            prop_assert!(circuits_equivalent(&c, &t.to_circuit()).unwrap().equivalent);
        }
    }
}
