// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use super::TableauError;
use crate::circuit::{Gate, GateKind, Phase};
use crate::gf2::BitVec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }
}

/// A signed tensor product of Hermitian Paulis. Bit pattern `x=1, z=1` on a
/// qubit stands for `Y`, not `XZ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: BitVec,
    z: BitVec,
    negative: bool,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            negative: false,
        }
    }

    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.set(q, p);
        s
    }

    /// `Z` on every qubit of `support`.
    pub fn z_parity(support: &BitVec) -> Self {
        PauliString {
            x: BitVec::zeros(support.len()),
            z: support.clone(),
            negative: false,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn set_negative(&mut self, negative: bool) {
        self.negative = negative;
    }

    pub fn negated(mut self) -> Self {
        self.negative = !self.negative;
        self
    }

    pub fn unsigned(&self) -> Self {
        PauliString {
            negative: false,
            ..self.clone()
        }
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_diagonal(&self) -> bool {
        self.x.is_zero()
    }

    pub fn weight(&self) -> usize {
        self.support().count()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_qubits()).filter(|&q| self.x.get(q) || self.z.get(q))
    }

    pub fn same_axis(&self, other: &PauliString) -> bool {
        self.x == other.x && self.z == other.z
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        self.x.dot(&other.z) == other.x.dot(&self.z)
    }

    /// Power of `i` picked up by `σ(self)·σ(other)` on top of the bitwise
    /// product, ignoring signs.
    pub(crate) fn product_phase(&self, other: &PauliString) -> u8 {
        let mut plus = 0u32;
        let mut minus = 0u32;
        let words = self
            .x
            .words()
            .iter()
            .zip(self.z.words())
            .zip(other.x.words().iter().zip(other.z.words()));
        for ((&x1, &z1), (&x2, &z2)) in words {
            plus += ((x1 & !z1 & x2 & z2) | (x1 & z1 & !x2 & z2) | (!x1 & z1 & x2 & !z2)).count_ones();
            minus += ((x1 & z1 & x2 & !z2) | (!x1 & z1 & x2 & z2) | (x1 & !z1 & !x2 & z2)).count_ones();
        }
        ((plus + 4 * minus - minus) % 4) as u8
    }

    /// `self ← self·other`, returning the leftover power of `i` (0 or 1).
    /// The product of commuting Hermitian Paulis is Hermitian, so callers
    /// that know the operands commute can ignore the result.
    pub(crate) fn mul_assign(&mut self, other: &PauliString) -> u8 {
        let e = self.product_phase(other) + 2 * self.negative as u8 + 2 * other.negative as u8;
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
        self.negative = (e % 4) >= 2;
        e % 2
    }

    fn flip_sign_if(&mut self, cond: bool) {
        self.negative ^= cond;
    }

    pub fn apply_h(&mut self, q: usize) {
        let (x, z) = (self.x.get(q), self.z.get(q));
        self.flip_sign_if(x && z);
        self.x.set(q, z);
        self.z.set(q, x);
    }

    pub fn apply_s(&mut self, q: usize) {
        let (x, z) = (self.x.get(q), self.z.get(q));
        self.flip_sign_if(x && z);
        self.z.set(q, z ^ x);
    }

    pub fn apply_sdg(&mut self, q: usize) {
        let (x, z) = (self.x.get(q), self.z.get(q));
        self.flip_sign_if(x && !z);
        self.z.set(q, z ^ x);
    }

    pub fn apply_x(&mut self, q: usize) {
        let z = self.z.get(q);
        self.flip_sign_if(z);
    }

    pub fn apply_y(&mut self, q: usize) {
        let (x, z) = (self.x.get(q), self.z.get(q));
        self.flip_sign_if(x ^ z);
    }

    pub fn apply_z(&mut self, q: usize) {
        let x = self.x.get(q);
        self.flip_sign_if(x);
    }

    pub fn apply_cx(&mut self, c: usize, t: usize) {
        let (xc, zc, xt, zt) = (self.x.get(c), self.z.get(c), self.x.get(t), self.z.get(t));
        self.flip_sign_if(xc && zt && !(xt ^ zc));
        self.x.set(t, xt ^ xc);
        self.z.set(c, zc ^ zt);
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        self.apply_h(b);
        self.apply_cx(a, b);
        self.apply_h(b);
    }

    pub fn apply_swap(&mut self, a: usize, b: usize) {
        let (xa, za) = (self.x.get(a), self.z.get(a));
        self.x.set(a, self.x.get(b));
        self.z.set(a, self.z.get(b));
        self.x.set(b, xa);
        self.z.set(b, za);
    }

    fn apply_z_quarters(&mut self, q: usize, k: u8) {
        match k {
            2 => self.apply_s(q),
            4 => self.apply_z(q),
            6 => self.apply_sdg(q),
            _ => {}
        }
    }

    /// `self ← G·self·G†` for a Clifford gate `G`.
    pub fn conjugate_by(&mut self, g: &Gate) -> Result<(), TableauError> {
        let q = &g.qubits;
        match &g.kind {
            GateKind::H => self.apply_h(q[0]),
            GateKind::X => self.apply_x(q[0]),
            GateKind::Y => self.apply_y(q[0]),
            GateKind::Z => self.apply_z(q[0]),
            GateKind::S => self.apply_s(q[0]),
            GateKind::Sdg => self.apply_sdg(q[0]),
            GateKind::SX => {
                self.apply_h(q[0]);
                self.apply_s(q[0]);
                self.apply_h(q[0]);
            }
            GateKind::SXdg => {
                self.apply_h(q[0]);
                self.apply_sdg(q[0]);
                self.apply_h(q[0]);
            }
            GateKind::RZ(p) if p.is_clifford() => self.apply_z_quarters(q[0], p.quarters().unwrap()),
            GateKind::RX(p) if p.is_clifford() => {
                self.apply_h(q[0]);
                self.apply_z_quarters(q[0], p.quarters().unwrap());
                self.apply_h(q[0]);
            }
            GateKind::CX => self.apply_cx(q[0], q[1]),
            GateKind::CZ => self.apply_cz(q[0], q[1]),
            GateKind::Swap => self.apply_swap(q[0], q[1]),
            other => return Err(TableauError::NotClifford(other.to_string())),
        }
        Ok(())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for q in 0..self.n_qubits() {
            let c = match self.get(q) {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

/// Accepts an optional leading `+` or `-` followed by `IXYZ` letters.
impl FromStr for PauliString {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let mut p = PauliString::identity(body.chars().count());
        p.negative = negative;
        for (q, c) in body.chars().enumerate() {
            let pauli = match c {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                _ => return Err(TableauError::Format(format!("bad Pauli letter `{c}` in `{s}`"))),
            };
            p.set(q, pauli);
        }
        Ok(p)
    }
}

/// `exp(−i·angle/2·P)` with a positive-sign `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliRotation {
    pauli: PauliString,
    angle: Phase,
}

impl PauliRotation {
    /// Folds a negative sign into the angle; `None` for a zero angle.
    pub fn new(pauli: PauliString, angle: Phase) -> Option<PauliRotation> {
        let angle = if pauli.is_negative() { -angle } else { angle };
        (!angle.is_zero()).then(|| PauliRotation {
            pauli: pauli.unsigned(),
            angle,
        })
    }

    pub fn pauli(&self) -> &PauliString {
        &self.pauli
    }

    pub fn angle(&self) -> Phase {
        self.angle
    }

    pub fn is_clifford(&self) -> bool {
        self.angle.is_clifford()
    }

    pub fn is_t_like(&self) -> bool {
        self.angle.is_t_like()
    }

    pub fn is_diagonal(&self) -> bool {
        self.pauli.is_diagonal()
    }

    pub fn commutes_with(&self, other: &PauliRotation) -> bool {
        self.pauli.commutes_with(&other.pauli)
    }

    /// `R·q·R†`, defined when the angle is a multiple of π/2.
    pub fn conjugate(&self, q: &PauliString) -> Option<PauliString> {
        let k = self.angle.quarters()?;
        if k % 2 == 1 {
            return None;
        }
        if k == 0 || q.commutes_with(&self.pauli) {
            return Some(q.clone());
        }
        Some(match k {
            4 => q.clone().negated(),
            _ => {
                // e^{∓iπ/4 P} q e^{±iπ/4 P} = ∓i·P·q for anticommuting q
                let mut r = self.pauli.clone();
                let e = (r.mul_assign(q) + 2 * r.is_negative() as u8) + if k == 2 { 3 } else { 1 };
                r.set_negative(e % 4 == 2);
                r
            }
        })
    }

    pub(crate) fn from_parts(pauli: PauliString, angle: Phase) -> PauliRotation {
        PauliRotation::new(pauli, angle).expect("nonzero rotation angle")
    }

    pub(crate) fn with_angle(&self, angle: Phase) -> Option<PauliRotation> {
        PauliRotation::new(self.pauli.clone(), angle)
    }
}

/// `ZZI π/4`
impl fmt::Display for PauliRotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.pauli.to_string();
        write!(f, "{} {}", &p[1..], self.angle)
    }
}
