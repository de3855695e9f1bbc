// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use super::pauli::{Pauli, PauliRotation, PauliString};
use super::TableauError;
use crate::circuit::{Gate, QuantumCircuit};
use crate::gf2::BooleanMatrix;

/// A Clifford operator `C`, stored as the images `C·X_i·C†` and `C·Z_i·C†`.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordTableau {
    x_images: Vec<PauliString>,
    z_images: Vec<PauliString>,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        CliffordTableau {
            x_images: (0..n).map(|q| PauliString::single(n, q, Pauli::X)).collect(),
            z_images: (0..n).map(|q| PauliString::single(n, q, Pauli::Z)).collect(),
        }
    }

    /// Rows in `X_0..X_{n-1}, Z_0..Z_{n-1}` order. Fails unless they form a
    /// symplectic basis.
    pub fn from_rows(x_images: Vec<PauliString>, z_images: Vec<PauliString>) -> Result<Self, TableauError> {
        let n = x_images.len();
        if z_images.len() != n || x_images.iter().chain(&z_images).any(|p| p.n_qubits() != n) {
            return Err(TableauError::Format("tableau rows do not match the qubit count".into()));
        }
        let t = CliffordTableau { x_images, z_images };
        if !t.is_symplectic() {
            return Err(TableauError::Format("tableau rows are not a symplectic basis".into()));
        }
        Ok(t)
    }

    pub fn n_qubits(&self) -> usize {
        self.x_images.len()
    }

    pub fn x_image(&self, q: usize) -> &PauliString {
        &self.x_images[q]
    }

    pub fn z_image(&self, q: usize) -> &PauliString {
        &self.z_images[q]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n_qubits())
    }

    fn rows_mut(&mut self) -> impl Iterator<Item = &mut PauliString> {
        self.x_images.iter_mut().chain(self.z_images.iter_mut())
    }

    /// Generator images anticommute exactly in `X_i`/`Z_i` pairs.
    pub fn is_symplectic(&self) -> bool {
        let n = self.n_qubits();
        for i in 0..n {
            for j in 0..n {
                let xz = self.x_images[i].commutes_with(&self.z_images[j]);
                if xz == (i == j) {
                    return false;
                }
                if i < j
                    && (!self.x_images[i].commutes_with(&self.x_images[j])
                        || !self.z_images[i].commutes_with(&self.z_images[j]))
                {
                    return false;
                }
            }
        }
        let mut m = BooleanMatrix::zeros(0, 2 * n);
        for p in self.x_images.iter().chain(&self.z_images) {
            let mut bits = p.x_bits().to_bools();
            bits.extend(p.z_bits().to_bools());
            m.push_row(crate::gf2::BitVec::from_bools(&bits)).unwrap();
        }
        n == 0 || m.rank() == 2 * n
    }

    /// `C ← G·C`
    pub fn apply_gate(&mut self, g: &Gate) -> Result<(), TableauError> {
        for row in self.rows_mut() {
            row.conjugate_by(g)?;
        }
        debug_assert!(self.is_symplectic());
        Ok(())
    }

    /// `C ← R·C` for a rotation by a multiple of π/2.
    pub fn apply_rotation(&mut self, r: &PauliRotation) -> Result<(), TableauError> {
        for row in self.rows_mut() {
            *row = r.conjugate(row).ok_or_else(|| TableauError::NotClifford(r.to_string()))?;
        }
        Ok(())
    }

    /// `C ← C·G`
    pub fn prepend_gate(&mut self, g: &Gate) -> Result<(), TableauError> {
        let n = self.n_qubits();
        let mut updates = Vec::new();
        for &q in &g.qubits {
            for (is_x, p) in [(true, Pauli::X), (false, Pauli::Z)] {
                let mut gen = PauliString::single(n, q, p);
                gen.conjugate_by(g)?;
                updates.push((is_x, q, self.conjugate(&gen)));
            }
        }
        for (is_x, q, img) in updates {
            if is_x {
                self.x_images[q] = img;
            } else {
                self.z_images[q] = img;
            }
        }
        Ok(())
    }

    /// `C ← C·R` for a rotation by a multiple of π/2.
    pub fn prepend_rotation(&mut self, r: &PauliRotation) -> Result<(), TableauError> {
        let n = self.n_qubits();
        let mut x = Vec::with_capacity(n);
        let mut z = Vec::with_capacity(n);
        for q in 0..n {
            let conj = |p: Pauli| r.conjugate(&PauliString::single(n, q, p)).ok_or_else(|| TableauError::NotClifford(r.to_string()));
            x.push(self.conjugate(&conj(Pauli::X)?));
            z.push(self.conjugate(&conj(Pauli::Z)?));
        }
        self.x_images = x;
        self.z_images = z;
        Ok(())
    }

    /// `C·P·C†`
    pub fn conjugate(&self, p: &PauliString) -> PauliString {
        let n = self.n_qubits();
        let mut acc = PauliString::identity(n);
        // Y = i·X·Z on each qubit
        let mut e = 2 * p.is_negative() as u8 + (p.x_bits().and(p.z_bits()).count_ones() % 4) as u8;
        for q in 0..n {
            if p.x_bits().get(q) {
                e += acc.mul_assign(&self.x_images[q]);
            }
            if p.z_bits().get(q) {
                e += acc.mul_assign(&self.z_images[q]);
            }
        }
        debug_assert_eq!(e % 2, 0, "conjugate of a Hermitian Pauli must be Hermitian");
        if (e / 2) % 2 == 1 {
            acc.negated()
        } else {
            acc
        }
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &CliffordTableau) -> CliffordTableau {
        CliffordTableau {
            x_images: self.x_images.iter().map(|p| other.conjugate(p)).collect(),
            z_images: self.z_images.iter().map(|p| other.conjugate(p)).collect(),
        }
    }

    pub fn inverse(&self) -> CliffordTableau {
        let n = self.n_qubits();
        // Symplectic inverse of the bit part: C†·X_j·C has x-bit i set when the
        // image of Z_i anticommutes with X_j, and z-bit i when the image of X_i does.
        let mut out = CliffordTableau::identity(n);
        for j in 0..n {
            for (is_x, p) in [(true, Pauli::X), (false, Pauli::Z)] {
                let target = PauliString::single(n, j, p);
                let mut pre = PauliString::identity(n);
                for i in 0..n {
                    let x = !self.z_images[i].commutes_with(&target);
                    let z = !self.x_images[i].commutes_with(&target);
                    pre.set(
                        i,
                        match (x, z) {
                            (false, false) => Pauli::I,
                            (true, false) => Pauli::X,
                            (true, true) => Pauli::Y,
                            (false, true) => Pauli::Z,
                        },
                    );
                }
                if self.conjugate(&pre).is_negative() {
                    pre = pre.negated();
                }
                if is_x {
                    out.x_images[j] = pre;
                } else {
                    out.z_images[j] = pre;
                }
            }
        }
        out
    }

    pub fn from_circuit(c: &QuantumCircuit) -> Result<Self, TableauError> {
        let mut t = Self::identity(c.n_qubits);
        for g in &c.gates {
            t.apply_gate(g)?;
        }
        Ok(t)
    }

    /// Staged synthesis over `{H, S, Sdg, CX, X, Z}`. Qubit by qubit, the
    /// image of `X_i` is reduced to `X_i` and then the image of `Z_i` to
    /// `Z_i`; the recorded reduction is inverted to give the circuit.
    pub fn to_circuit(&self) -> QuantumCircuit {
        let n = self.n_qubits();
        let mut t = self.clone();
        let mut ops: Vec<Gate> = Vec::new();
        let mut push = |t: &mut CliffordTableau, g: Gate| {
            t.apply_gate(&g).expect("synthesis uses Clifford gates only");
            ops.push(g);
        };
        for i in 0..n {
            // image of X_i: make every support qubit an X
            let a = t.x_images[i].clone();
            for q in a.support() {
                match a.get(q) {
                    Pauli::Z => push(&mut t, Gate::h(q)),
                    Pauli::Y => push(&mut t, Gate::s(q)),
                    _ => {}
                }
            }
            let a = t.x_images[i].clone();
            if a.get(i) == Pauli::I {
                let q = a.support().next().expect("image of X_i is never the identity");
                push(&mut t, Gate::cx(q, i));
            }
            let a = t.x_images[i].clone();
            for q in a.support().filter(|&q| q != i) {
                push(&mut t, Gate::cx(i, q));
            }
            // image of Z_i: anticommutes with X_i, so it holds Y or Z on i
            if t.z_images[i].get(i) == Pauli::Y {
                push(&mut t, Gate::h(i));
                push(&mut t, Gate::s(i));
                push(&mut t, Gate::h(i));
            }
            let b = t.z_images[i].clone();
            for q in b.support().filter(|&q| q != i) {
                match b.get(q) {
                    Pauli::X => push(&mut t, Gate::h(q)),
                    Pauli::Y => {
                        push(&mut t, Gate::s(q));
                        push(&mut t, Gate::h(q));
                    }
                    _ => {}
                }
                push(&mut t, Gate::cx(q, i));
            }
            if t.x_images[i].is_negative() {
                push(&mut t, Gate::z(i));
            }
            if t.z_images[i].is_negative() {
                push(&mut t, Gate::x(i));
            }
        }
        debug_assert!(t.is_identity());
        let gates = ops.iter().rev().map(|g| g.inverse().expect("builtin gates invert"));
        QuantumCircuit::from_gates(n, gates).expect("synthesized gates stay in range")
    }
}

impl fmt::Display for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, p) in self.x_images.iter().enumerate() {
            writeln!(f, "X{q} -> {p}")?;
        }
        for (q, p) in self.z_images.iter().enumerate() {
            writeln!(f, "Z{q} -> {p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliffordTableau\n{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::random::{random_circuit, RandomCircuitConfig};
    use crate::tensor::circuits_equivalent;
    use proptest::prelude::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn s_maps_x_to_y() {
        let mut t = CliffordTableau::identity(1);
        t.apply_gate(&Gate::s(0)).unwrap();
        assert_eq!(t.x_image(0), &ps("Y"));
        assert_eq!(t.z_image(0), &ps("Z"));
    }

    #[test]
    fn cx_images() {
        let mut t = CliffordTableau::identity(2);
        t.apply_gate(&Gate::cx(0, 1)).unwrap();
        assert_eq!(t.x_image(0), &ps("XX"));
        assert_eq!(t.z_image(1), &ps("ZZ"));
        assert_eq!(t.conjugate(&ps("YY")), ps("-XZ"));
    }

    #[test]
    fn rejects_non_clifford() {
        let c = QuantumCircuit::from_gates(1, [Gate::t(0)]).unwrap();
        assert!(CliffordTableau::from_circuit(&c).is_err());
    }

    #[test]
    fn from_rows_checks_symplectic_form() {
        assert!(CliffordTableau::from_rows(vec![ps("X")], vec![ps("X")]).is_err());
        assert!(CliffordTableau::from_rows(vec![ps("Z")], vec![ps("-X")]).is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn synthesis_roundtrips(n in 1usize..6, len in 0usize..40, seed in any::<u64>()) {
            let c = random_circuit(&RandomCircuitConfig::clifford(n, len), seed);
            let t = CliffordTableau::from_circuit(&c).unwrap();
            prop_assert!(t.is_symplectic());
            let back = t.to_circuit();
            prop_assert_eq!(CliffordTableau::from_circuit(&back).unwrap(), t.clone());
            prop_assert!(circuits_equivalent(&c, &back).unwrap().equivalent);
        }

        #[test]
        fn inverse_and_prepend_agree(n in 1usize..5, len in 0usize..30, seed in any::<u64>()) {
            let c = random_circuit(&RandomCircuitConfig::clifford(n, len), seed);
            let t = CliffordTableau::from_circuit(&c).unwrap();
            prop_assert!(t.then(&t.inverse()).is_identity());
            prop_assert!(t.inverse().then(&t).is_identity());
            let mut pre = CliffordTableau::identity(n);
            for g in c.gates.iter().rev() {
                pre.prepend_gate(g).unwrap();
            }
            prop_assert_eq!(pre, t);
        }
    }
}
