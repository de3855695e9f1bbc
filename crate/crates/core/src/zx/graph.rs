// SPDX-License-Identifier: Apache-2.0

use indexmap::IndexMap;

use super::ZXError;
use crate::circuit::{GateKind, Phase, QuantumCircuit};

pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Z,
    X,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeType {
    Simple,
    Hadamard,
}

impl EdgeType {
    pub fn toggled(self) -> EdgeType {
        match self {
            EdgeType::Simple => EdgeType::Hadamard,
            EdgeType::Hadamard => EdgeType::Simple,
        }
    }

    /// Type of the wire obtained by composing two edges through an
    /// identity spider.
    pub fn compose(self, other: EdgeType) -> EdgeType {
        if self == other {
            EdgeType::Simple
        } else {
            EdgeType::Hadamard
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZXVertex {
    pub kind: VertexKind,
    pub phase: Phase,
    /// Lane hint used by layout and extraction.
    pub qubit: Option<usize>,
}

/// Flags that together make a diagram graph-like.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphLikeCertificate {
    pub only_z_spiders: bool,
    pub only_hadamard_internal_edges: bool,
    pub boundaries_simple: bool,
}

impl GraphLikeCertificate {
    pub fn holds(&self) -> bool {
        self.only_z_spiders && self.only_hadamard_internal_edges && self.boundaries_simple
    }
}

/// Open graph of phased spiders and boundaries.
///
/// Vertex ids are handed out monotonically and never reused. Vertices and
/// adjacency lists iterate in insertion order, so every rewrite sequence is
/// reproducible.
#[derive(Debug, Clone, Default)]
pub struct ZXDiagram {
    vertices: IndexMap<VertexId, ZXVertex>,
    adjacency: IndexMap<VertexId, IndexMap<VertexId, EdgeType>>,
    inputs: Vec<VertexId>,
    outputs: Vec<VertexId>,
    next_id: VertexId,
}

impl ZXDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, kind: VertexKind, phase: Phase, qubit: Option<usize>) -> VertexId {
        let id = self.next_id;
        self.next_id += 1;
        let phase = if kind == VertexKind::Boundary { Phase::zero() } else { phase };
        self.vertices.insert(id, ZXVertex { kind, phase, qubit });
        self.adjacency.insert(id, IndexMap::new());
        id
    }

    /// Inserts a vertex under a caller-chosen id (used by the text reader).
    pub(crate) fn insert_vertex_with_id(&mut self, id: VertexId, v: ZXVertex) -> Result<(), ZXError> {
        if self.vertices.contains_key(&id) {
            return Err(ZXError::Format(format!("duplicate vertex id {id}")));
        }
        self.vertices.insert(id, v);
        self.adjacency.insert(id, IndexMap::new());
        self.next_id = self.next_id.max(id + 1);
        Ok(())
    }

    pub fn add_input(&mut self, qubit: usize) -> VertexId {
        let v = self.add_vertex(VertexKind::Boundary, Phase::zero(), Some(qubit));
        self.inputs.push(v);
        v
    }

    pub fn add_output(&mut self, qubit: usize) -> VertexId {
        let v = self.add_vertex(VertexKind::Boundary, Phase::zero(), Some(qubit));
        self.outputs.push(v);
        v
    }

    pub fn set_inputs(&mut self, inputs: Vec<VertexId>) {
        self.inputs = inputs;
    }

    pub fn set_outputs(&mut self, outputs: Vec<VertexId>) {
        self.outputs = outputs;
    }

    pub fn inputs(&self) -> &[VertexId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[VertexId] {
        &self.outputs
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        if let Some(nbrs) = self.adjacency.shift_remove(&v) {
            for w in nbrs.keys() {
                if let Some(adj) = self.adjacency.get_mut(w) {
                    adj.shift_remove(&v);
                }
            }
        }
        self.vertices.shift_remove(&v);
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn vertex(&self, v: VertexId) -> &ZXVertex {
        &self.vertices[&v]
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.vertices[&v].kind
    }

    pub fn set_kind(&mut self, v: VertexId, kind: VertexKind) {
        self.vertices[&v].kind = kind;
    }

    pub fn phase(&self, v: VertexId) -> Phase {
        self.vertices[&v].phase
    }

    pub fn set_phase(&mut self, v: VertexId, p: Phase) {
        self.vertices[&v].phase = p;
    }

    pub fn add_to_phase(&mut self, v: VertexId, p: Phase) {
        let cur = self.vertices[&v].phase;
        self.vertices[&v].phase = cur + p;
    }

    pub fn qubit(&self, v: VertexId) -> Option<usize> {
        self.vertices[&v].qubit
    }

    pub fn is_boundary(&self, v: VertexId) -> bool {
        self.kind(v) == VertexKind::Boundary
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.values().map(IndexMap::len).sum::<usize>() / 2
    }

    pub fn vertex_ids(&self) -> Vec<VertexId> {
        self.vertices.keys().copied().collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &ZXVertex)> {
        self.vertices.iter().map(|(&k, v)| (k, v))
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency[&v].keys().copied()
    }

    pub fn neighbor_vec(&self, v: VertexId) -> Vec<VertexId> {
        self.neighbors(v).collect()
    }

    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeType)> + '_ {
        self.adjacency[&v].iter().map(|(&w, &t)| (w, t))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[&v].len()
    }

    pub fn edge_type(&self, u: VertexId, v: VertexId) -> Option<EdgeType> {
        self.adjacency.get(&u)?.get(&v).copied()
    }

    pub fn connected(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_type(u, v).is_some()
    }

    /// Every edge once, as `(u, v, type)` with `u < v`, in insertion order
    /// of `u`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, EdgeType)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for (&u, adj) in &self.adjacency {
            for (&v, &t) in adj {
                if u < v {
                    out.push((u, v, t));
                }
            }
        }
        out
    }

    /// Inserts or overwrites an edge without any parallel-edge resolution.
    pub fn set_edge(&mut self, u: VertexId, v: VertexId, t: EdgeType) {
        assert_ne!(u, v, "self-loops are never stored");
        self.adjacency[&u].insert(v, t);
        self.adjacency[&v].insert(u, t);
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        self.adjacency[&u].shift_remove(&v);
        self.adjacency[&v].shift_remove(&u);
    }

    /// Adds an edge between Z-spiders, resolving parallel edges and self-loops:
    /// two Hadamard edges cancel; a simple edge next to a Hadamard edge
    /// leaves the simple edge and adds π (the pair will fuse, turning the
    /// Hadamard edge into a self-loop); a Hadamard self-loop adds π; a simple
    /// self-loop vanishes.
    pub fn add_edge_smart(&mut self, u: VertexId, v: VertexId, t: EdgeType) {
        if u == v {
            if t == EdgeType::Hadamard {
                self.add_to_phase(u, Phase::pi());
            }
            return;
        }
        match (self.edge_type(u, v), t) {
            (None, _) => self.set_edge(u, v, t),
            (Some(EdgeType::Hadamard), EdgeType::Hadamard) => self.remove_edge(u, v),
            (Some(EdgeType::Simple), EdgeType::Simple) => {}
            (Some(_), _) => {
                debug_assert!(!self.is_boundary(u) && !self.is_boundary(v));
                self.set_edge(u, v, EdgeType::Simple);
                self.add_to_phase(u, Phase::pi());
            }
        }
    }

    /// Toggles a Hadamard edge between two Z-spiders.
    pub fn toggle_hadamard(&mut self, u: VertexId, v: VertexId) {
        self.add_edge_smart(u, v, EdgeType::Hadamard);
    }

    /// Spiders whose phase is not a multiple of π/2.
    pub fn non_clifford_count(&self) -> usize {
        self.vertices
            .values()
            .filter(|v| v.kind != VertexKind::Boundary && !v.phase.is_clifford())
            .count()
    }

    /// Odd multiples of π/4.
    pub fn t_count(&self) -> usize {
        self.vertices
            .values()
            .filter(|v| v.kind != VertexKind::Boundary && v.phase.is_t_like())
            .count()
    }

    pub fn spider_count(&self) -> usize {
        self.vertices.values().filter(|v| v.kind != VertexKind::Boundary).count()
    }

    /// A spider with no boundary neighbour.
    pub fn is_interior(&self, v: VertexId) -> bool {
        !self.is_boundary(v) && self.neighbors(v).all(|w| !self.is_boundary(w))
    }

    pub fn certificate(&self) -> GraphLikeCertificate {
        let mut cert = GraphLikeCertificate {
            only_z_spiders: true,
            only_hadamard_internal_edges: true,
            boundaries_simple: true,
        };
        for v in self.vertices.values() {
            if v.kind == VertexKind::X {
                cert.only_z_spiders = false;
            }
        }
        for (u, v, t) in self.edges() {
            let boundary = self.is_boundary(u) || self.is_boundary(v);
            match (boundary, t) {
                (true, EdgeType::Hadamard) => cert.boundaries_simple = false,
                (false, EdgeType::Simple) => cert.only_hadamard_internal_edges = false,
                _ => {}
            }
        }
        cert
    }

    pub fn is_graph_like(&self) -> bool {
        self.certificate().holds()
    }

    /// Merges `v` into `u`; both must be Z-spiders joined by a simple edge.
    pub(crate) fn fuse(&mut self, u: VertexId, v: VertexId) {
        debug_assert_eq!(self.edge_type(u, v), Some(EdgeType::Simple));
        let pv = self.phase(v);
        self.add_to_phase(u, pv);
        let nbrs: Vec<(VertexId, EdgeType)> = self.incident(v).filter(|&(w, _)| w != u).collect();
        self.remove_vertex(v);
        for (w, t) in nbrs {
            self.add_edge_smart(u, w, t);
        }
    }

    /// Translates a circuit gate by gate. Multi-controlled gates become a
    /// Z-spider per qubit plus one phase gadget per parity term.
    pub fn from_circuit(c: &QuantumCircuit) -> Result<ZXDiagram, ZXError> {
        let mut d = ZXDiagram::new();
        // (last vertex, pending hadamard)
        let mut wire: Vec<(VertexId, bool)> = (0..c.n_qubits).map(|q| (d.add_input(q), false)).collect();

        fn attach(d: &mut ZXDiagram, wire: &mut [(VertexId, bool)], q: usize, kind: VertexKind, phase: Phase) -> VertexId {
            let v = d.add_vertex(kind, phase, Some(q));
            let (last, h) = wire[q];
            d.set_edge(last, v, if h { EdgeType::Hadamard } else { EdgeType::Simple });
            wire[q] = (v, false);
            v
        }

        for g in &c.gates {
            let qs = &g.qubits;
            if let Some(p) = g.kind.z_rotation() {
                attach(&mut d, &mut wire, qs[0], VertexKind::Z, p);
                continue;
            }
            if let Some(p) = g.kind.x_rotation() {
                attach(&mut d, &mut wire, qs[0], VertexKind::X, p);
                continue;
            }
            match &g.kind {
                GateKind::H => wire[qs[0]].1 ^= true,
                GateKind::Y => {
                    attach(&mut d, &mut wire, qs[0], VertexKind::Z, Phase::pi());
                    attach(&mut d, &mut wire, qs[0], VertexKind::X, Phase::pi());
                }
                GateKind::CX => {
                    let a = attach(&mut d, &mut wire, qs[0], VertexKind::Z, Phase::zero());
                    let b = attach(&mut d, &mut wire, qs[1], VertexKind::X, Phase::zero());
                    d.set_edge(a, b, EdgeType::Simple);
                }
                GateKind::CZ => {
                    let a = attach(&mut d, &mut wire, qs[0], VertexKind::Z, Phase::zero());
                    let b = attach(&mut d, &mut wire, qs[1], VertexKind::Z, Phase::zero());
                    d.set_edge(a, b, EdgeType::Hadamard);
                }
                GateKind::Swap => wire.swap(qs[0], qs[1]),
                GateKind::CCZ | GateKind::CCX | GateKind::MCT(_) => {
                    let target = *qs.last().unwrap();
                    let flip = g.kind != GateKind::CCZ;
                    if flip {
                        wire[target].1 ^= true;
                    }
                    let spiders: Vec<VertexId> = qs
                        .iter()
                        .map(|&q| attach(&mut d, &mut wire, q, VertexKind::Z, Phase::zero()))
                        .collect();
                    for (support, angle) in crate::circuit::decompose::multi_controlled_z_terms(qs) {
                        if let [q] = support[..] {
                            let s = spiders[qs.iter().position(|&x| x == q).unwrap()];
                            d.add_to_phase(s, angle);
                            continue;
                        }
                        let hub = d.add_vertex(VertexKind::Z, Phase::zero(), None);
                        for q in &support {
                            let s = spiders[qs.iter().position(|x| x == q).unwrap()];
                            d.set_edge(hub, s, EdgeType::Hadamard);
                        }
                        let leaf = d.add_vertex(VertexKind::Z, angle, None);
                        d.set_edge(hub, leaf, EdgeType::Hadamard);
                    }
                    if flip {
                        wire[target].1 ^= true;
                    }
                }
                other => return Err(ZXError::Unconvertible(other.name().to_string())),
            }
        }
        for (q, &(last, h)) in wire.clone().iter().enumerate() {
            let o = d.add_output(q);
            d.set_edge(last, o, if h { EdgeType::Hadamard } else { EdgeType::Simple });
        }
        Ok(d)
    }

    /// Recolours X-spiders, fuses simple edges between Z-spiders and makes
    /// boundary edges simple.
    pub fn to_graph_like(&self) -> ZXDiagram {
        let mut d = self.clone();
        d.make_graph_like();
        d
    }

    pub fn make_graph_like(&mut self) {
        for v in self.vertex_ids() {
            if self.kind(v) == VertexKind::X {
                self.set_kind(v, VertexKind::Z);
                for (w, t) in self.incident(v).collect::<Vec<_>>() {
                    self.set_edge(v, w, t.toggled());
                }
            }
        }
        super::rules::spider_simp(self);
        self.normalize_boundary_edges();
        debug_assert!(self.is_graph_like());
    }

    /// Replaces every Hadamard edge at a boundary by a simple edge into a
    /// fresh phase-free spider.
    pub(crate) fn normalize_boundary_edges(&mut self) {
        let boundaries: Vec<VertexId> = self.inputs.iter().chain(&self.outputs).copied().collect();
        for b in boundaries {
            let Some((w, t)) = self.incident(b).next() else { continue };
            if t != EdgeType::Hadamard {
                continue;
            }
            let q = self.qubit(b);
            self.remove_edge(b, w);
            let z = self.add_vertex(VertexKind::Z, Phase::zero(), q);
            self.set_edge(b, z, EdgeType::Simple);
            if self.is_boundary(w) {
                let z2 = self.add_vertex(VertexKind::Z, Phase::zero(), q);
                self.set_edge(z, z2, EdgeType::Hadamard);
                self.set_edge(z2, w, EdgeType::Simple);
            } else {
                self.set_edge(z, w, EdgeType::Hadamard);
            }
        }
    }
}
