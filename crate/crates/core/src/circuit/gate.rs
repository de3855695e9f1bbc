// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use num_complex::Complex64;

use super::{CircuitError, Phase};

/// A user-registered gate kind. Optimizers treat it as opaque; ZX and tableau
/// conversion reject it.
#[derive(Debug, Clone, PartialEq)]
pub struct CustomGate {
    pub name: String,
    pub arity: usize,
    /// Row-major `2^arity × 2^arity` matrix, first qubit most significant.
    pub matrix: Option<Vec<Complex64>>,
    /// Name of the inverse kind. Equal to `name` for self-inverse gates.
    pub inverse: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    SX,
    SXdg,
    RZ(Phase),
    RX(Phase),
    CX,
    CZ,
    Swap,
    CCX,
    CCZ,
    /// Multi-controlled X with the given number of controls.
    MCT(usize),
    Custom(Arc<CustomGate>),
}

/// How a gate acts on one of its qubits, for commutation checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Axis {
    Z,
    X,
    Other,
}

impl GateKind {
    pub fn name(&self) -> &str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::SX => "sx",
            GateKind::SXdg => "sxdg",
            GateKind::RZ(_) => "rz",
            GateKind::RX(_) => "rx",
            GateKind::CX => "cx",
            GateKind::CZ => "cz",
            GateKind::Swap => "swap",
            GateKind::CCX => "ccx",
            GateKind::CCZ => "ccz",
            GateKind::MCT(_) => "mcx",
            GateKind::Custom(c) => &c.name,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            GateKind::CX | GateKind::CZ | GateKind::Swap => 2,
            GateKind::CCX | GateKind::CCZ => 3,
            GateKind::MCT(k) => k + 1,
            GateKind::Custom(c) => c.arity,
            _ => 1,
        }
    }

    pub fn param(&self) -> Option<Phase> {
        match self {
            GateKind::RZ(p) | GateKind::RX(p) => Some(*p),
            _ => None,
        }
    }

    pub fn is_builtin(&self) -> bool {
        !matches!(self, GateKind::Custom(_))
    }

    pub fn inverse(&self) -> Option<GateKind> {
        Some(match self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            GateKind::SX => GateKind::SXdg,
            GateKind::SXdg => GateKind::SX,
            GateKind::RZ(p) => GateKind::RZ(-*p),
            GateKind::RX(p) => GateKind::RX(-*p),
            GateKind::Custom(c) => {
                let inv = c.inverse.as_ref()?;
                if *inv == c.name {
                    self.clone()
                } else {
                    GateKind::Custom(Arc::new(CustomGate {
                        name: inv.clone(),
                        arity: c.arity,
                        matrix: c.matrix.as_ref().map(|m| conjugate_transpose(m, 1 << c.arity)),
                        inverse: Some(c.name.clone()),
                    }))
                }
            }
            other => other.clone(),
        })
    }

    /// Angle of a rotation about the Z axis (Z, S, T, RZ and friends).
    pub fn z_rotation(&self) -> Option<Phase> {
        Some(match self {
            GateKind::Z => Phase::pi(),
            GateKind::S => Phase::new(1, 2),
            GateKind::Sdg => Phase::new(3, 2),
            GateKind::T => Phase::new(1, 4),
            GateKind::Tdg => Phase::new(7, 4),
            GateKind::RZ(p) => *p,
            _ => return None,
        })
    }

    /// Angle of a rotation about the X axis (X, SX, RX and friends).
    pub fn x_rotation(&self) -> Option<Phase> {
        Some(match self {
            GateKind::X => Phase::pi(),
            GateKind::SX => Phase::new(1, 2),
            GateKind::SXdg => Phase::new(3, 2),
            GateKind::RX(p) => *p,
            _ => return None,
        })
    }

    /// Canonical single-qubit Z rotation for an angle; `None` for zero.
    pub fn from_z_rotation(p: Phase) -> Option<GateKind> {
        Some(match p.quarters() {
            Some(0) => return None,
            Some(1) => GateKind::T,
            Some(2) => GateKind::S,
            Some(4) => GateKind::Z,
            Some(6) => GateKind::Sdg,
            Some(7) => GateKind::Tdg,
            _ => GateKind::RZ(p),
        })
    }

    pub fn from_x_rotation(p: Phase) -> Option<GateKind> {
        Some(match p.quarters() {
            Some(0) => return None,
            Some(2) => GateKind::SX,
            Some(4) => GateKind::X,
            Some(6) => GateKind::SXdg,
            _ => GateKind::RX(p),
        })
    }

    pub fn is_clifford(&self) -> bool {
        match self {
            GateKind::H
            | GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::S
            | GateKind::Sdg
            | GateKind::SX
            | GateKind::SXdg
            | GateKind::CX
            | GateKind::CZ
            | GateKind::Swap => true,
            GateKind::RZ(p) | GateKind::RX(p) => p.is_clifford(),
            _ => false,
        }
    }

    /// Odd multiple of π/4 about a single axis.
    pub fn is_t_like(&self) -> bool {
        self.z_rotation()
            .or_else(|| self.x_rotation())
            .is_some_and(|p| p.is_t_like())
    }

    pub(crate) fn axis_on(&self, position: usize) -> Axis {
        match self {
            GateKind::Z | GateKind::S | GateKind::Sdg | GateKind::T | GateKind::Tdg | GateKind::RZ(_) => Axis::Z,
            GateKind::X | GateKind::SX | GateKind::SXdg | GateKind::RX(_) => Axis::X,
            GateKind::CZ | GateKind::CCZ => Axis::Z,
            GateKind::CX => [Axis::Z, Axis::X][position],
            GateKind::CCX => [Axis::Z, Axis::Z, Axis::X][position],
            GateKind::MCT(k) => {
                if position < *k {
                    Axis::Z
                } else {
                    Axis::X
                }
            }
            _ => Axis::Other,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::RZ(p) | GateKind::RX(p) => write!(f, "{}({})", self.name(), p),
            GateKind::MCT(k) => write!(f, "mcx[{k}]"),
            _ => f.write_str(self.name()),
        }
    }
}

pub(crate) fn conjugate_transpose(m: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            out[c * dim + r] = m[r * dim + c].conj();
        }
    }
    out
}

/// A gate applied to an ordered list of qubits (controls before targets).
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Result<Gate, CircuitError> {
        if qubits.len() != kind.arity() {
            return Err(CircuitError::Arity {
                gate: kind.name().to_string(),
                expected: kind.arity(),
                got: qubits.len(),
            });
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(CircuitError::DuplicateQubit {
                    gate: kind.name().to_string(),
                    qubit: *q,
                });
            }
        }
        Ok(Gate { kind, qubits })
    }

    pub fn single(kind: GateKind, q: usize) -> Gate {
        Gate::new(kind, vec![q]).expect("single-qubit kind")
    }

    pub fn h(q: usize) -> Gate {
        Gate::single(GateKind::H, q)
    }

    pub fn x(q: usize) -> Gate {
        Gate::single(GateKind::X, q)
    }

    pub fn z(q: usize) -> Gate {
        Gate::single(GateKind::Z, q)
    }

    pub fn s(q: usize) -> Gate {
        Gate::single(GateKind::S, q)
    }

    pub fn sdg(q: usize) -> Gate {
        Gate::single(GateKind::Sdg, q)
    }

    pub fn t(q: usize) -> Gate {
        Gate::single(GateKind::T, q)
    }

    pub fn tdg(q: usize) -> Gate {
        Gate::single(GateKind::Tdg, q)
    }

    pub fn rz(q: usize, p: Phase) -> Gate {
        Gate::single(GateKind::RZ(p), q)
    }

    pub fn rx(q: usize, p: Phase) -> Gate {
        Gate::single(GateKind::RX(p), q)
    }

    pub fn cx(control: usize, target: usize) -> Gate {
        Gate::new(GateKind::CX, vec![control, target]).expect("distinct qubits")
    }

    pub fn cz(a: usize, b: usize) -> Gate {
        Gate::new(GateKind::CZ, vec![a, b]).expect("distinct qubits")
    }

    pub fn swap(a: usize, b: usize) -> Gate {
        Gate::new(GateKind::Swap, vec![a, b]).expect("distinct qubits")
    }

    pub fn arity(&self) -> usize {
        self.qubits.len()
    }

    pub fn inverse(&self) -> Option<Gate> {
        Some(Gate {
            kind: self.kind.inverse()?,
            qubits: self.qubits.clone(),
        })
    }

    pub fn acts_on(&self, q: usize) -> bool {
        self.qubits.contains(&q)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for (i, q) in self.qubits.iter().enumerate() {
            write!(f, "{}q{}", if i == 0 { " " } else { "," }, q)?;
        }
        Ok(())
    }
}

/// How a registered name turns into a kind once its parameters are known.
#[derive(Debug, Clone)]
enum Constructor {
    Fixed(GateKind),
    /// Single-angle Z rotation (`rz`, `u1`, `p`).
    ZRotation,
    XRotation,
    /// `mcx`: the control count comes from the operand count.
    MultiControlled,
}

/// Name-keyed table of every gate kind the parser and printer know about.
///
/// Builtins are always present; [`GateRegistry::register`] adds custom kinds.
#[derive(Debug, Clone)]
pub struct GateRegistry {
    entries: IndexMap<String, Constructor>,
}

impl Default for GateRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl GateRegistry {
    pub fn builtin() -> Self {
        let mut entries = IndexMap::new();
        for k in [
            GateKind::H,
            GateKind::X,
            GateKind::Y,
            GateKind::Z,
            GateKind::S,
            GateKind::Sdg,
            GateKind::T,
            GateKind::Tdg,
            GateKind::SX,
            GateKind::SXdg,
            GateKind::CX,
            GateKind::CZ,
            GateKind::Swap,
            GateKind::CCX,
            GateKind::CCZ,
        ] {
            entries.insert(k.name().to_string(), Constructor::Fixed(k));
        }
        entries.insert("cnot".into(), Constructor::Fixed(GateKind::CX));
        entries.insert("toffoli".into(), Constructor::Fixed(GateKind::CCX));
        entries.insert("c3x".into(), Constructor::Fixed(GateKind::MCT(3)));
        entries.insert("c4x".into(), Constructor::Fixed(GateKind::MCT(4)));
        entries.insert("rz".into(), Constructor::ZRotation);
        entries.insert("u1".into(), Constructor::ZRotation);
        entries.insert("p".into(), Constructor::ZRotation);
        entries.insert("rx".into(), Constructor::XRotation);
        entries.insert("mcx".into(), Constructor::MultiControlled);
        GateRegistry { entries }
    }

    /// Adds (or replaces) a custom gate kind.
    pub fn register(&mut self, gate: CustomGate) {
        self.entries
            .insert(gate.name.clone(), Constructor::Fixed(GateKind::Custom(Arc::new(gate))));
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Number of angle parameters the named gate takes.
    pub fn param_count(&self, name: &str) -> Option<usize> {
        self.entries.get(name).map(|c| match c {
            Constructor::ZRotation | Constructor::XRotation => 1,
            _ => 0,
        })
    }

    /// Resolves a name plus its parameters and operand count to a kind.
    pub fn resolve(&self, name: &str, params: &[Phase], operands: usize) -> Option<GateKind> {
        match self.entries.get(name)? {
            Constructor::Fixed(k) => params.is_empty().then(|| k.clone()),
            Constructor::ZRotation => (params.len() == 1).then(|| GateKind::RZ(params[0])),
            Constructor::XRotation => (params.len() == 1).then(|| GateKind::RX(params[0])),
            Constructor::MultiControlled => {
                (params.is_empty() && operands >= 2).then(|| match operands {
                    2 => GateKind::CX,
                    3 => GateKind::CCX,
                    n => GateKind::MCT(n - 1),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_and_duplicates_are_checked() {
        assert!(matches!(
            Gate::new(GateKind::CX, vec![0]),
            Err(CircuitError::Arity { expected: 2, got: 1, .. })
        ));
        assert!(matches!(
            Gate::new(GateKind::CZ, vec![1, 1]),
            Err(CircuitError::DuplicateQubit { qubit: 1, .. })
        ));
        assert_eq!(GateKind::MCT(3).arity(), 4);
    }

    #[test]
    fn inverses() {
        assert_eq!(GateKind::T.inverse(), Some(GateKind::Tdg));
        assert_eq!(GateKind::CX.inverse(), Some(GateKind::CX));
        assert_eq!(
            GateKind::RZ(Phase::new(1, 8)).inverse(),
            Some(GateKind::RZ(Phase::new(15, 8)))
        );
        let opaque = GateKind::Custom(Arc::new(CustomGate {
            name: "oracle".into(),
            arity: 2,
            matrix: None,
            inverse: None,
        }));
        assert_eq!(opaque.inverse(), None);
    }

    #[test]
    fn custom_inverse_round_trips() {
        let g = GateKind::Custom(Arc::new(CustomGate {
            name: "v".into(),
            arity: 1,
            matrix: None,
            inverse: Some("vdg".into()),
        }));
        let inv = g.inverse().unwrap();
        assert_eq!(inv.name(), "vdg");
        assert_eq!(inv.inverse().unwrap(), g);
    }

    #[test]
    fn registry_resolves_names() {
        let r = GateRegistry::builtin();
        assert_eq!(r.resolve("u1", &[Phase::new(1, 4)], 1), Some(GateKind::RZ(Phase::new(1, 4))));
        assert_eq!(r.resolve("mcx", &[], 4), Some(GateKind::MCT(3)));
        assert_eq!(r.resolve("h", &[Phase::pi()], 1), None);
        assert_eq!(r.resolve("nope", &[], 1), None);
    }

    #[test]
    fn canonical_rotations() {
        assert_eq!(GateKind::from_z_rotation(Phase::new(1, 2)), Some(GateKind::S));
        assert_eq!(GateKind::from_z_rotation(Phase::zero()), None);
        assert_eq!(
            GateKind::from_z_rotation(Phase::new(3, 4)),
            Some(GateKind::RZ(Phase::new(3, 4)))
        );
        assert_eq!(GateKind::from_x_rotation(Phase::pi()), Some(GateKind::X));
    }
}
