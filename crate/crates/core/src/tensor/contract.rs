// SPDX-License-Identifier: Apache-2.0

//! Dense contraction of a ZX-diagram as a tensor network. Spiders of high
//! degree are first split into chains of degree-three spiders; tensors are
//! then contracted pairwise, always picking the pair whose result grows
//! least. Scalars are dropped: the result is rescaled so that a unitary
//! diagram yields a unitary matrix.

use num_complex::Complex64;

use super::{TensorError, Unitary, MAX_QUBITS};
use crate::zx::{EdgeType, VertexKind, ZXDiagram};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Wire labels; ports `0..n` are inputs and `n..2n` outputs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Label {
    Wire(usize),
    Port(usize),
}

#[derive(Clone, Debug)]
struct Tensor {
    labels: Vec<Label>,
    /// Row-major over `labels`, first label most significant.
    data: Vec<Complex64>,
}

fn z_tensor(labels: Vec<Label>, e: Complex64) -> Tensor {
    let mut data = vec![ZERO; 1 << labels.len()];
    data[0] = ONE;
    let last = data.len() - 1;
    data[last] += e;
    Tensor { labels, data }
}

fn x_tensor(labels: Vec<Label>, e: Complex64) -> Tensor {
    let data = (0..1usize << labels.len())
        .map(|i| if i.count_ones() % 2 == 1 { ONE - e } else { ONE + e })
        .collect();
    Tensor { labels, data }
}

fn h_tensor(a: Label, b: Label) -> Tensor {
    Tensor {
        labels: vec![a, b],
        data: vec![ONE, ONE, ONE, -ONE],
    }
}

/// Offsets of every assignment of `positions` within a tensor of `len` labels.
fn offsets(positions: &[usize], len: usize) -> Vec<usize> {
    let k = positions.len();
    (0..1usize << k)
        .map(|x| {
            (0..k)
                .filter(|&i| x >> (k - 1 - i) & 1 == 1)
                .map(|i| 1usize << (len - 1 - positions[i]))
                .sum()
        })
        .collect()
}

impl Tensor {
    fn contract(&self, other: &Tensor) -> Tensor {
        let shared: Vec<Label> = self.labels.iter().copied().filter(|l| other.labels.contains(l)).collect();
        let a_kept: Vec<Label> = self.labels.iter().copied().filter(|l| !shared.contains(l)).collect();
        let b_kept: Vec<Label> = other.labels.iter().copied().filter(|l| !shared.contains(l)).collect();
        let pos = |t: &Tensor, ls: &[Label]| -> Vec<usize> {
            ls.iter().map(|l| t.labels.iter().position(|x| x == l).unwrap()).collect()
        };
        let (la, lb) = (self.labels.len(), other.labels.len());
        let a_k = offsets(&pos(self, &a_kept), la);
        let a_s = offsets(&pos(self, &shared), la);
        let b_k = offsets(&pos(other, &b_kept), lb);
        let b_s = offsets(&pos(other, &shared), lb);
        let mut data = Vec::with_capacity(a_k.len() * b_k.len());
        for &ao in &a_k {
            for &bo in &b_k {
                let mut acc = ZERO;
                for (&sa, &sb) in a_s.iter().zip(&b_s) {
                    acc += self.data[ao + sa] * other.data[bo + sb];
                }
                data.push(acc);
            }
        }
        Tensor {
            labels: a_kept.into_iter().chain(b_kept).collect(),
            data,
        }
    }
}

struct Network {
    tensors: Vec<Option<Tensor>>,
    next_wire: usize,
}

impl Network {
    fn fresh(&mut self) -> Label {
        self.next_wire += 1;
        Label::Wire(self.next_wire - 1)
    }

    /// Adds a spider, splitting it into a chain when it has more than three legs.
    fn add_spider(&mut self, legs: Vec<Label>, e: Complex64, x: bool) {
        let make = if x { x_tensor } else { z_tensor };
        if legs.len() <= 3 {
            self.tensors.push(Some(make(legs, e)));
            return;
        }
        let mut rest = legs;
        let mut phase = e;
        while rest.len() > 3 {
            let link = self.fresh();
            let (a, b) = (rest.remove(0), rest.remove(0));
            self.tensors.push(Some(make(vec![a, b, link], phase)));
            phase = ONE;
            rest.insert(0, link);
        }
        self.tensors.push(Some(make(rest, phase)));
    }

    fn contract_all(mut self) -> Tensor {
        loop {
            let live: Vec<usize> = (0..self.tensors.len()).filter(|&i| self.tensors[i].is_some()).collect();
            if live.len() == 1 {
                return self.tensors[live[0]].take().unwrap();
            }
            let mut best: Option<(i64, usize, usize)> = None;
            for (x, &i) in live.iter().enumerate() {
                let a = self.tensors[i].as_ref().unwrap();
                for &j in &live[x + 1..] {
                    let b = self.tensors[j].as_ref().unwrap();
                    let shared = a.labels.iter().filter(|l| b.labels.contains(l)).count();
                    if shared == 0 {
                        continue;
                    }
                    let out = a.labels.len() + b.labels.len() - 2 * shared;
                    let cost = (1i64 << out) - (1i64 << a.labels.len()) - (1i64 << b.labels.len());
                    if best.is_none_or(|(c, _, _)| cost < c) {
                        best = Some((cost, i, j));
                    }
                }
            }
            let (i, j) = match best {
                Some((_, i, j)) => (i, j),
                // disconnected pieces: outer product of the two smallest
                None => {
                    let mut by_size = live.clone();
                    by_size.sort_by_key(|&i| self.tensors[i].as_ref().unwrap().labels.len());
                    (by_size[0], by_size[1])
                }
            };
            let b = self.tensors[j].take().unwrap();
            let a = self.tensors[i].take().unwrap();
            self.tensors[i] = Some(a.contract(&b));
        }
    }
}

pub fn unitary_of_zx(d: &ZXDiagram) -> Result<Unitary, TensorError> {
    let (ni, no) = (d.inputs().len(), d.outputs().len());
    if ni != no {
        return Err(TensorError::BoundaryMismatch { inputs: ni, outputs: no });
    }
    if ni > MAX_QUBITS {
        return Err(TensorError::QubitCap { n: ni, cap: MAX_QUBITS });
    }
    let n = ni;
    let ids = d.vertex_ids();
    let mut legs: Vec<Vec<Label>> = vec![Vec::new(); ids.len()];
    let index_of = |v: usize| ids.iter().position(|&x| x == v).unwrap();
    let mut net = Network {
        tensors: Vec::new(),
        next_wire: 0,
    };
    for (u, v, t) in d.edges() {
        let (a, b) = (index_of(u), index_of(v));
        let la = net.fresh();
        legs[a].push(la);
        match t {
            EdgeType::Simple => legs[b].push(la),
            EdgeType::Hadamard => {
                let lb = net.fresh();
                legs[b].push(lb);
                net.tensors.push(Some(h_tensor(la, lb)));
            }
        }
    }
    for (k, &v) in ids.iter().enumerate() {
        let e = Complex64::from_polar(1.0, d.phase(v).to_radians());
        match d.kind(v) {
            VertexKind::Z => net.add_spider(std::mem::take(&mut legs[k]), e, false),
            VertexKind::X => net.add_spider(std::mem::take(&mut legs[k]), e, true),
            VertexKind::Boundary => {
                let port = match d.inputs().iter().position(|&b| b == v) {
                    Some(i) => i,
                    None => n + d
                        .outputs()
                        .iter()
                        .position(|&b| b == v)
                        .ok_or(TensorError::NotUnitary(f64::INFINITY))?,
                };
                if legs[k].len() != 1 {
                    return Err(TensorError::NotUnitary(f64::INFINITY));
                }
                net.tensors.push(Some(z_tensor(vec![legs[k][0], Label::Port(port)], ONE)));
            }
        }
    }
    let state = if net.tensors.is_empty() {
        Tensor {
            labels: Vec::new(),
            data: vec![ONE],
        }
    } else {
        net.contract_all()
    };

    // reorder into a (outputs × inputs) matrix
    let dim = 1usize << n;
    let len = state.labels.len();
    let pos = |p: usize| state.labels.iter().position(|&l| l == Label::Port(p)).unwrap();
    let in_shift: Vec<usize> = (0..n).map(|i| len - 1 - pos(i)).collect();
    let out_shift: Vec<usize> = (0..n).map(|o| len - 1 - pos(n + o)).collect();
    let mut entries = vec![ZERO; dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            let mut idx = 0usize;
            for q in 0..n {
                idx |= (r >> (n - 1 - q) & 1) << out_shift[q];
                idx |= (c >> (n - 1 - q) & 1) << in_shift[q];
            }
            entries[r * dim + c] = state.data[idx];
        }
    }
    let norm: f64 = entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(TensorError::NotUnitary(f64::INFINITY));
    }
    let s = (dim as f64).sqrt() / norm;
    let u = Unitary::from_entries(n, entries.into_iter().map(|e| e * s).collect());
    let dev = u.unitarity_deviation();
    if dev > 1e-6 {
        return Err(TensorError::NotUnitary(dev));
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::random::{random_circuit, RandomCircuitConfig};
    use crate::circuit::{Gate, GateKind, Phase, QuantumCircuit};
    use crate::tensor::{equiv_up_to_global_phase, unitary_of_circuit};

    #[test]
    fn bare_wires_are_identity() {
        let d = ZXDiagram::from_circuit(&QuantumCircuit::new(2)).unwrap();
        let u = unitary_of_zx(&d).unwrap();
        assert!(equiv_up_to_global_phase(&u, &Unitary::identity(2).unwrap()).unwrap().equivalent);
    }

    #[test]
    fn single_z_spider_is_diagonal_phase() {
        let theta = Phase::new(3, 8);
        let d = ZXDiagram::from_circuit(&QuantumCircuit::from_gates(1, [Gate::rz(0, theta)]).unwrap()).unwrap();
        let u = unitary_of_zx(&d).unwrap();
        let s = 1.0 / u.get(0, 0);
        assert!((u.get(1, 1) * s - Complex64::from_polar(1.0, theta.to_radians())).norm() < 1e-12);
        assert!(u.get(0, 1).norm() < 1e-12 && u.get(1, 0).norm() < 1e-12);
    }

    #[test]
    fn cx_diagram_matches_gate() {
        let c = QuantumCircuit::from_gates(2, [Gate::cx(0, 1)]).unwrap();
        let d = ZXDiagram::from_circuit(&c).unwrap();
        let r = equiv_up_to_global_phase(&unitary_of_zx(&d).unwrap(), &unitary_of_circuit(&c).unwrap()).unwrap();
        assert!(r.equivalent);
    }

    #[test]
    fn multi_controlled_gadgets_match() {
        for kind in [GateKind::CCZ, GateKind::CCX, GateKind::MCT(3)] {
            let qs: Vec<usize> = (0..kind.arity()).rev().collect();
            let c = QuantumCircuit::from_gates(4, [Gate::h(0), Gate::new(kind.clone(), qs).unwrap()]).unwrap();
            let d = ZXDiagram::from_circuit(&c).unwrap();
            let r = equiv_up_to_global_phase(&unitary_of_zx(&d).unwrap(), &unitary_of_circuit(&c).unwrap()).unwrap();
            assert!(r.equivalent, "{kind}: {}", r.fidelity);
        }
    }

    #[test]
    fn oracles_agree_on_random_circuits() {
        for seed in 0..40 {
            let c = random_circuit(&RandomCircuitConfig::general(4, 30), seed);
            let d = ZXDiagram::from_circuit(&c).unwrap();
            let u = unitary_of_circuit(&c).unwrap();
            for dz in [d.clone(), d.to_graph_like()] {
                let r = equiv_up_to_global_phase(&u, &unitary_of_zx(&dz).unwrap()).unwrap();
                assert!(r.equivalent, "seed {seed}: {}", r.fidelity);
            }
        }
    }
}
