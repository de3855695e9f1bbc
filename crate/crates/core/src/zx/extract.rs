// SPDX-License-Identifier: Apache-2.0

//! Frontier-based circuit extraction.
//!
//! The frontier holds one spider per unfinished output. Each round peels
//! phases and CZs off the frontier, then either moves the frontier one step
//! inward along a unit row of the frontier/neighbour biadjacency matrix, or
//! first makes such a row appear with CNOTs found by GF(2) elimination.
//! When elimination cannot help, a phase gadget next to the frontier is
//! pivoted away. Gates are produced from the outputs inward and reversed at
//! the end.

use super::graph::{EdgeType, VertexId, VertexKind, ZXDiagram};
use super::rules::{leaf_of, pivot};
use super::ZXError;
use crate::circuit::{Gate, Phase, QuantumCircuit};
use crate::gf2::{BooleanMatrix, RowOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GadgetRemoval {
    /// Pivot the first gadget found next to the frontier.
    Naive,
    /// Pivot the gadget that leaves the fewest CZ edges on the new frontier.
    #[default]
    MinCz,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExtractOptions {
    pub gadget_removal: GadgetRemoval,
}

pub fn extract_circuit(d: &ZXDiagram) -> Result<QuantumCircuit, ZXError> {
    extract_circuit_with(d, ExtractOptions::default())
}

struct Extractor {
    g: ZXDiagram,
    outputs: Vec<VertexId>,
    frontier: Vec<Option<VertexId>>,
    /// Gates in reverse time order.
    gates: Vec<Gate>,
    opts: ExtractOptions,
}

pub fn extract_circuit_with(d: &ZXDiagram, opts: ExtractOptions) -> Result<QuantumCircuit, ZXError> {
    let (ni, no) = (d.inputs().len(), d.outputs().len());
    if ni != no {
        return Err(ZXError::BoundaryMismatch { inputs: ni, outputs: no });
    }
    let mut g = if d.is_graph_like() { d.clone() } else { d.to_graph_like() };
    prepare_inputs(&mut g);
    let mut ex = Extractor {
        outputs: g.outputs().to_vec(),
        frontier: vec![None; no],
        gates: Vec::new(),
        opts,
        g,
    };
    ex.init_frontier()?;
    let budget = 4 * (ex.g.num_vertices() + ex.g.num_edges()) + 64;
    let mut steps = 0;
    loop {
        ex.clean_frontier()?;
        if ex.frontier.iter().all(Option::is_none) {
            break;
        }
        steps += 1;
        if steps > budget {
            return Err(ex.stuck("step budget exhausted"));
        }
        if ex.extract_units() > 0 {
            continue;
        }
        if ex.eliminate() {
            continue;
        }
        if !ex.remove_gadget() {
            return Err(ex.stuck("no extractable row and no gadget next to the frontier"));
        }
    }
    ex.finish()
}

/// Makes every input feed its own spider through a simple edge. A spider
/// already attached that way is kept; otherwise a phase-free one is
/// inserted. Bare wires are left alone.
fn prepare_inputs(g: &mut ZXDiagram) {
    let mut claimed: Vec<VertexId> = Vec::new();
    for b in g.inputs().to_vec() {
        let Some((v, t)) = g.incident(b).next() else { continue };
        if g.is_boundary(v) {
            continue;
        }
        if t == EdgeType::Simple && !claimed.contains(&v) {
            claimed.push(v);
            continue;
        }
        let q = g.qubit(b);
        g.remove_edge(b, v);
        let z1 = g.add_vertex(VertexKind::Z, Phase::zero(), q);
        g.set_edge(b, z1, EdgeType::Simple);
        claimed.push(z1);
        match t {
            EdgeType::Hadamard => g.set_edge(z1, v, EdgeType::Hadamard),
            EdgeType::Simple => {
                let z2 = g.add_vertex(VertexKind::Z, Phase::zero(), q);
                g.set_edge(z1, z2, EdgeType::Hadamard);
                g.set_edge(z2, v, EdgeType::Hadamard);
            }
        }
    }
}

impl Extractor {
    fn stuck(&self, why: &str) -> ZXError {
        let state: Vec<String> = self
            .frontier
            .iter()
            .enumerate()
            .filter_map(|(q, f)| f.map(|v| format!("q{q}:v{v}(deg {})", self.g.degree(v))))
            .collect();
        ZXError::ExtractionStuck(format!("{why}; frontier [{}]", state.join(", ")))
    }

    fn init_frontier(&mut self) -> Result<(), ZXError> {
        for q in 0..self.outputs.len() {
            let o = self.outputs[q];
            let (v, t) = self
                .g
                .incident(o)
                .next()
                .ok_or_else(|| ZXError::ExtractionStuck(format!("output {q} is dangling")))?;
            if t == EdgeType::Hadamard {
                self.gates.push(Gate::h(q));
                self.g.set_edge(o, v, EdgeType::Simple);
            }
            if self.g.is_boundary(v) {
                continue;
            }
            if self.frontier.contains(&Some(v)) {
                // one spider feeding two outputs: give this output its own
                self.g.remove_edge(o, v);
                let z = self.g.add_vertex(VertexKind::Z, Phase::zero(), Some(q));
                let y = self.g.add_vertex(VertexKind::Z, Phase::zero(), Some(q));
                self.g.set_edge(o, z, EdgeType::Simple);
                self.g.set_edge(z, y, EdgeType::Hadamard);
                self.g.set_edge(y, v, EdgeType::Hadamard);
                self.frontier[q] = Some(z);
            } else {
                self.frontier[q] = Some(v);
            }
        }
        Ok(())
    }

    /// Emits frontier phases and CZs, and retires frontier spiders that are
    /// plain wires to an input.
    fn clean_frontier(&mut self) -> Result<(), ZXError> {
        let n = self.frontier.len();
        for q in 0..n {
            let Some(f) = self.frontier[q] else { continue };
            let p = self.g.phase(f);
            if !p.is_zero() {
                self.gates.push(Gate::rz(q, p));
                self.g.set_phase(f, Phase::zero());
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let (Some(fa), Some(fb)) = (self.frontier[a], self.frontier[b]) else { continue };
                match self.g.edge_type(fa, fb) {
                    None => {}
                    Some(EdgeType::Hadamard) => {
                        self.gates.push(Gate::cz(a, b));
                        self.g.remove_edge(fa, fb);
                    }
                    Some(EdgeType::Simple) => return Err(self.stuck("simple edge between frontier spiders")),
                }
            }
        }
        for q in 0..n {
            let Some(f) = self.frontier[q] else { continue };
            let input = self.g.neighbors(f).find(|w| self.g.inputs().contains(w));
            let Some(b) = input else { continue };
            let t = self.g.edge_type(f, b).unwrap();
            if self.g.degree(f) == 2 {
                self.g.remove_vertex(f);
                self.g.set_edge(self.outputs[q], b, t);
                self.frontier[q] = None;
            } else {
                // the input leg would be an unlisted column; route it
                // through two identity spiders so that it becomes a normal one
                self.g.remove_edge(f, b);
                let z1 = self.g.add_vertex(VertexKind::Z, Phase::zero(), self.g.qubit(b));
                let z2 = self.g.add_vertex(VertexKind::Z, Phase::zero(), self.g.qubit(b));
                self.g.set_edge(b, z1, t);
                self.g.set_edge(z1, z2, EdgeType::Hadamard);
                self.g.set_edge(z2, f, EdgeType::Hadamard);
            }
        }
        Ok(())
    }

    fn rows_and_columns(&self) -> (Vec<usize>, Vec<VertexId>, BooleanMatrix) {
        let rows: Vec<usize> = (0..self.frontier.len()).filter(|&q| self.frontier[q].is_some()).collect();
        let mut cols: Vec<VertexId> = Vec::new();
        for &q in &rows {
            for w in self.g.neighbors(self.frontier[q].unwrap()) {
                if !self.g.is_boundary(w) && !cols.contains(&w) {
                    cols.push(w);
                }
            }
        }
        let mut m = BooleanMatrix::zeros(rows.len(), cols.len());
        for (i, &q) in rows.iter().enumerate() {
            let f = self.frontier[q].unwrap();
            for (j, &w) in cols.iter().enumerate() {
                if self.g.connected(f, w) {
                    m.set(i, j, true).expect("in range");
                }
            }
        }
        (rows, cols, m)
    }

    /// Moves the frontier across every unit row. Returns how many moved.
    fn extract_units(&mut self) -> usize {
        let (rows, cols, m) = self.rows_and_columns();
        let mut used: Vec<VertexId> = Vec::new();
        let mut moved = 0;
        for (i, &q) in rows.iter().enumerate() {
            let f = self.frontier[q].unwrap();
            if m.row(i).count_ones() != 1 {
                continue;
            }
            let w = cols[m.row(i).first_one().unwrap()];
            if used.contains(&w) {
                continue;
            }
            used.push(w);
            if self.g.edge_type(f, w) == Some(EdgeType::Hadamard) {
                self.gates.push(Gate::h(q));
            }
            let o = self.outputs[q];
            self.g.remove_vertex(f);
            self.g.set_edge(o, w, EdgeType::Simple);
            self.frontier[q] = Some(w);
            moved += 1;
        }
        moved
    }

    /// Row-reduces the biadjacency matrix and, if that yields an
    /// extractable row, replays the row operations on the diagram as CNOTs.
    fn eliminate(&mut self) -> bool {
        let (rows, _cols, m) = self.rows_and_columns();
        let Ok((reduced, trace)) = m.gaussian_elimination(true) else { return false };
        let mut order = rows.clone();
        for op in &trace.ops {
            if let RowOp::Swap(a, b) = *op {
                order.swap(a, b);
            }
        }
        let useful = (0..reduced.num_rows()).any(|i| reduced.row(i).count_ones() == 1);
        if !useful {
            return false;
        }
        let mut order = rows;
        for op in &trace.ops {
            match *op {
                RowOp::Swap(a, b) => order.swap(a, b),
                RowOp::Add { source, target } => {
                    let (qs, qt) = (order[source], order[target]);
                    let (fs, ft) = (self.frontier[qs].unwrap(), self.frontier[qt].unwrap());
                    let nbrs: Vec<VertexId> = self.g.neighbors(fs).filter(|&w| !self.g.is_boundary(w)).collect();
                    for w in nbrs {
                        self.g.toggle_hadamard(ft, w);
                    }
                    self.gates.push(Gate::cx(qt, qs));
                }
            }
        }
        true
    }

    /// Candidate `(qubit, hub)` pairs: a frontier spider next to a gadget hub.
    fn gadget_candidates(&self) -> Vec<(usize, VertexId)> {
        let mut out = Vec::new();
        for (q, f) in self.frontier.iter().enumerate() {
            let Some(f) = *f else { continue };
            for w in self.g.neighbors(f) {
                if !self.g.is_boundary(w)
                    && self.g.phase(w).is_pauli()
                    && self.g.is_interior(w)
                    && leaf_of(&self.g, w).is_some()
                {
                    out.push((q, w));
                }
            }
        }
        out
    }

    fn apply_gadget_pivot(g: &mut ZXDiagram, outputs: &[VertexId], frontier: &mut [Option<VertexId>], q: usize, hub: VertexId) {
        let f = frontier[q].unwrap();
        let o = outputs[q];
        g.remove_edge(o, f);
        let z = g.add_vertex(VertexKind::Z, Phase::zero(), Some(q));
        g.set_edge(o, z, EdgeType::Hadamard);
        g.set_edge(z, f, EdgeType::Hadamard);
        pivot(g, f, hub);
        frontier[q] = Some(z);
    }

    fn frontier_cz_count(g: &ZXDiagram, frontier: &[Option<VertexId>]) -> usize {
        let fs: Vec<VertexId> = frontier.iter().flatten().copied().collect();
        let mut n = 0;
        for (i, &a) in fs.iter().enumerate() {
            n += fs[i + 1..].iter().filter(|&&b| g.connected(a, b)).count();
        }
        n
    }

    fn remove_gadget(&mut self) -> bool {
        let cands = self.gadget_candidates();
        let chosen = match self.opts.gadget_removal {
            GadgetRemoval::Naive => cands.first().copied(),
            GadgetRemoval::MinCz => cands
                .iter()
                .map(|&(q, w)| {
                    let mut g = self.g.clone();
                    let mut fr = self.frontier.clone();
                    Self::apply_gadget_pivot(&mut g, &self.outputs, &mut fr, q, w);
                    (Self::frontier_cz_count(&g, &fr), q, w)
                })
                .min_by_key(|&(cost, _, _)| cost)
                .map(|(_, q, w)| (q, w)),
        };
        let Some((q, w)) = chosen else { return false };
        log::trace!("gadget pivot on qubit {q} with hub v{w}");
        Self::apply_gadget_pivot(&mut self.g, &self.outputs, &mut self.frontier, q, w);
        self.gates.push(Gate::h(q));
        let z = self.frontier[q].unwrap();
        self.g.set_edge(self.outputs[q], z, EdgeType::Simple);
        true
    }

    /// Every output now feeds an input directly; realise the permutation
    /// with swaps and put the gate list in time order.
    fn finish(mut self) -> Result<QuantumCircuit, ZXError> {
        let n = self.outputs.len();
        let inputs = self.g.inputs().to_vec();
        let mut perm = vec![0usize; n];
        for q in 0..n {
            let o = self.outputs[q];
            let (b, t) = self
                .g
                .incident(o)
                .next()
                .ok_or_else(|| ZXError::ExtractionStuck(format!("output {q} is dangling")))?;
            let i = inputs
                .iter()
                .position(|&x| x == b)
                .ok_or_else(|| self.stuck("output not joined to an input after extraction"))?;
            if t == EdgeType::Hadamard {
                self.gates.push(Gate::h(q));
            }
            perm[q] = i;
        }
        // swaps in time order: move the value of input perm[q] onto wire q
        let mut loc: Vec<usize> = (0..n).collect();
        let mut at: Vec<usize> = (0..n).collect();
        let mut swaps = Vec::new();
        for q in 0..n {
            let l = loc[perm[q]];
            if l != q {
                swaps.push(Gate::swap(q, l));
                let other = at[q];
                at.swap(q, l);
                loc[perm[q]] = q;
                loc[other] = l;
            }
        }
        self.gates.extend(swaps.into_iter().rev());
        self.gates.reverse();
        QuantumCircuit::from_gates(n, self.gates).map_err(|e| ZXError::ExtractionStuck(e.to_string()))
    }
}
