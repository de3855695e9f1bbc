// SPDX-License-Identifier: Apache-2.0

use std::cmp::Reverse;

use log::{debug, info};
use thiserror::Error;

use super::Device;
use crate::circuit::{Gate, GateKind, QuantumCircuit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Objective {
    Depth,
    #[default]
    Swaps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheduler {
    /// Commit the locally best SWAP.
    Heuristic,
    /// Beam search over SWAP sequences, committing only the first SWAP.
    Search { width: usize, depth: usize },
}

impl Default for Scheduler {
    fn default() -> Self {
        Scheduler::Search { width: 4, depth: 2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialPlacement {
    #[default]
    Identity,
    /// Put the most frequently interacting logical pairs on adjacent qubits.
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RouteOptions {
    pub objective: Objective,
    pub scheduler: Scheduler,
    pub placement: InitialPlacement,
    /// Charge a SWAP as three CX when computing depth and delay.
    pub decompose_swaps: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RouteError {
    #[error("circuit uses {logical} qubits but the device has only {physical}")]
    TooManyQubits { logical: usize, physical: usize },
    #[error("gate `{gate}` acts on {arity} qubits; decompose it before routing")]
    Arity { gate: String, arity: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MappingError {
    #[error("mapped circuit has {got} qubits, device has {expected}")]
    QubitCount { got: usize, expected: usize },
    #[error("gate {index} acts on uncoupled qubits {a} and {b}")]
    NotAdjacent { index: usize, a: usize, b: usize },
    #[error("gate {index} acts on physical qubit {qubit}, which holds no logical qubit")]
    Unoccupied { index: usize, qubit: usize },
    #[error("replaying the SWAPs does not reproduce the final placement")]
    FinalPlacement,
    #[error("placement is not a valid injection")]
    Placement,
}

/// An injective map from logical to physical qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placement {
    l2p: Vec<usize>,
    p2l: Vec<Option<usize>>,
}

impl Placement {
    pub fn identity(n_logical: usize, n_physical: usize) -> Placement {
        assert!(n_logical <= n_physical);
        Placement::from_l2p((0..n_logical).collect(), n_physical).expect("identity is injective")
    }

    pub fn from_l2p(l2p: Vec<usize>, n_physical: usize) -> Option<Placement> {
        let mut p2l = vec![None; n_physical];
        for (l, &p) in l2p.iter().enumerate() {
            if p >= n_physical || p2l[p].is_some() {
                return None;
            }
            p2l[p] = Some(l);
        }
        Some(Placement { l2p, p2l })
    }

    pub fn n_logical(&self) -> usize {
        self.l2p.len()
    }

    pub fn n_physical(&self) -> usize {
        self.p2l.len()
    }

    pub fn physical(&self, logical: usize) -> usize {
        self.l2p[logical]
    }

    pub fn logical(&self, physical: usize) -> Option<usize> {
        self.p2l[physical]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.l2p
    }

    /// Exchange whatever the two physical qubits hold.
    pub fn swap_physical(&mut self, a: usize, b: usize) {
        self.p2l.swap(a, b);
        for p in [a, b] {
            if let Some(l) = self.p2l[p] {
                self.l2p[l] = p;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoutingResult {
    pub mapped_circuit: QuantumCircuit,
    pub initial_placement: Placement,
    pub final_placement: Placement,
    pub swap_count: usize,
    pub mapped_depth: usize,
    pub mapped_delay: usize,
}

/// Inserts SWAPs so every two-qubit gate acts on coupled physical qubits.
/// SWAP gates already in the input are split into three CX first, so every
/// SWAP in the output is a routing SWAP.
pub fn route(c: &QuantumCircuit, device: &Device, opts: &RouteOptions) -> Result<RoutingResult, RouteError> {
    if c.n_qubits > device.n_physical() {
        return Err(RouteError::TooManyQubits {
            logical: c.n_qubits,
            physical: device.n_physical(),
        });
    }
    let mut gates = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        match (g.arity(), &g.kind) {
            (2, GateKind::Swap) => {
                let (a, b) = (g.qubits[0], g.qubits[1]);
                gates.extend([Gate::cx(a, b), Gate::cx(b, a), Gate::cx(a, b)]);
            }
            (1 | 2, _) => gates.push(g.clone()),
            (arity, kind) => {
                return Err(RouteError::Arity {
                    gate: kind.name().to_string(),
                    arity,
                })
            }
        }
    }
    let initial = match opts.placement {
        InitialPlacement::Identity => Placement::identity(c.n_qubits, device.n_physical()),
        InitialPlacement::Greedy => greedy_placement(c.n_qubits, &gates, device),
    };
    let mut per_qubit = vec![Vec::new(); c.n_qubits];
    for (i, g) in gates.iter().enumerate() {
        for &q in &g.qubits {
            per_qubit[q].push(i);
        }
    }
    let router = Router {
        gates: &gates,
        per_qubit,
        device,
        opts,
        swap_weight: if opts.decompose_swaps { 6 } else { 2 },
        swap_layers: if opts.decompose_swaps { 3 } else { 1 },
    };
    let mut state = State::new(initial.clone(), c.n_qubits, gates.len());
    router.execute_ready(&mut state);
    let mut stall = 0;
    while state.remaining > 0 {
        let executed_before = state.remaining;
        let (a, b) = if stall > 2 * device.n_physical() {
            router.closest_first(&state)
        } else {
            match opts.scheduler {
                Scheduler::Heuristic => router.heuristic(&state),
                Scheduler::Search { width, depth } => router.search(&state, width.max(1), depth.max(1)),
            }
        };
        router.apply_swap(&mut state, a, b);
        router.execute_ready(&mut state);
        stall = if state.remaining < executed_before { 0 } else { stall + 1 };
    }
    let mut mapped = QuantumCircuit::new(device.n_physical()).with_name(c.name.clone());
    mapped.gates = state.out;
    let result = RoutingResult {
        mapped_circuit: mapped,
        initial_placement: initial,
        final_placement: state.placement,
        swap_count: state.swaps,
        mapped_depth: state.level.iter().copied().max().unwrap_or(0),
        mapped_delay: state.time.iter().copied().max().unwrap_or(0),
    };
    info!(
        "routed {} gates onto {}: {} SWAPs, depth {}, delay {}",
        c.gates.len(),
        device.name(),
        result.swap_count,
        result.mapped_depth,
        result.mapped_delay
    );
    Ok(result)
}

/// Checks coupling of every two-qubit gate and that replaying the SWAPs
/// from the initial placement yields the final one.
pub fn validate_mapping(r: &RoutingResult, device: &Device) -> Result<(), MappingError> {
    let c = &r.mapped_circuit;
    if c.n_qubits != device.n_physical() {
        return Err(MappingError::QubitCount {
            got: c.n_qubits,
            expected: device.n_physical(),
        });
    }
    if r.initial_placement.n_physical() != device.n_physical()
        || r.final_placement.n_physical() != device.n_physical()
        || r.initial_placement.n_logical() != r.final_placement.n_logical()
    {
        return Err(MappingError::Placement);
    }
    let mut p = r.initial_placement.clone();
    for (index, g) in c.gates.iter().enumerate() {
        if g.arity() == 2 && !device.adjacent(g.qubits[0], g.qubits[1]) {
            return Err(MappingError::NotAdjacent {
                index,
                a: g.qubits[0],
                b: g.qubits[1],
            });
        }
        if g.kind == GateKind::Swap {
            p.swap_physical(g.qubits[0], g.qubits[1]);
        } else if let Some(&qubit) = g.qubits.iter().find(|&&q| p.logical(q).is_none()) {
            return Err(MappingError::Unoccupied { index, qubit });
        }
    }
    if p != r.final_placement {
        return Err(MappingError::FinalPlacement);
    }
    Ok(())
}

/// Translates the mapped circuit back to logical qubits, reading every SWAP
/// as a relabeling.
pub fn unmap(r: &RoutingResult) -> Result<QuantumCircuit, MappingError> {
    let mut p = r.initial_placement.clone();
    let mut out = QuantumCircuit::new(p.n_logical()).with_name(r.mapped_circuit.name.clone());
    for (index, g) in r.mapped_circuit.gates.iter().enumerate() {
        if g.kind == GateKind::Swap {
            p.swap_physical(g.qubits[0], g.qubits[1]);
            continue;
        }
        let qubits = g
            .qubits
            .iter()
            .map(|&q| p.logical(q).ok_or(MappingError::Unoccupied { index, qubit: q }))
            .collect::<Result<Vec<_>, _>>()?;
        out.gates.push(Gate {
            kind: g.kind.clone(),
            qubits,
        });
    }
    Ok(out)
}

fn greedy_placement(n_logical: usize, gates: &[Gate], device: &Device) -> Placement {
    let n_phys = device.n_physical();
    let mut weight = vec![vec![0usize; n_logical]; n_logical];
    for g in gates.iter().filter(|g| g.arity() == 2) {
        let (a, b) = (g.qubits[0].min(g.qubits[1]), g.qubits[0].max(g.qubits[1]));
        weight[a][b] += 1;
    }
    let mut pairs: Vec<(usize, usize, usize)> = (0..n_logical)
        .flat_map(|a| (a + 1..n_logical).map(move |b| (a, b)))
        .filter_map(|(a, b)| (weight[a][b] > 0).then_some((weight[a][b], a, b)))
        .collect();
    pairs.sort_by_key(|&(w, a, b)| (Reverse(w), a, b));
    let mut l2p: Vec<Option<usize>> = vec![None; n_logical];
    let mut used = vec![false; n_phys];
    let nearest_free = |used: &[bool], from: Option<usize>| -> usize {
        (0..n_phys)
            .filter(|&p| !used[p])
            .min_by_key(|&p| (from.map_or(0, |f| device.distance(f, p)), p))
            .expect("enough physical qubits")
    };
    for (_, a, b) in pairs {
        match (l2p[a], l2p[b]) {
            (Some(_), Some(_)) => {}
            (Some(pa), None) | (None, Some(pa)) => {
                let other = if l2p[a].is_some() { b } else { a };
                let p = nearest_free(&used, Some(pa));
                used[p] = true;
                l2p[other] = Some(p);
            }
            (None, None) => {
                let edge = device.edges().find(|&(u, v)| !used[u] && !used[v]);
                let (pa, pb) = match edge {
                    Some(e) => e,
                    None => {
                        let pa = nearest_free(&used, None);
                        used[pa] = true;
                        (pa, nearest_free(&used, Some(pa)))
                    }
                };
                used[pa] = true;
                used[pb] = true;
                l2p[a] = Some(pa);
                l2p[b] = Some(pb);
            }
        }
    }
    for slot in &mut l2p {
        if slot.is_none() {
            let p = nearest_free(&used, None);
            used[p] = true;
            *slot = Some(p);
        }
    }
    let l2p: Vec<usize> = l2p.into_iter().map(|p| p.expect("placed")).collect();
    debug!("greedy placement {l2p:?}");
    Placement::from_l2p(l2p, n_phys).expect("greedy placement is injective")
}

#[derive(Debug, Clone)]
struct State {
    placement: Placement,
    next: Vec<usize>,
    remaining: usize,
    level: Vec<usize>,
    time: Vec<usize>,
    out: Vec<Gate>,
    swaps: usize,
}

impl State {
    fn new(placement: Placement, n_logical: usize, n_gates: usize) -> State {
        let n_phys = placement.n_physical();
        State {
            placement,
            next: vec![0; n_logical],
            remaining: n_gates,
            level: vec![0; n_phys],
            time: vec![0; n_phys],
            out: Vec::new(),
            swaps: 0,
        }
    }
}

struct Router<'a> {
    gates: &'a [Gate],
    per_qubit: Vec<Vec<usize>>,
    device: &'a Device,
    opts: &'a RouteOptions,
    swap_weight: usize,
    swap_layers: usize,
}

impl Router<'_> {
    fn frontier(&self, s: &State) -> Vec<usize> {
        let head = |q: usize| self.per_qubit[q].get(s.next[q]).copied();
        let mut f: Vec<usize> = (0..s.next.len())
            .filter_map(head)
            .filter(|&g| self.gates[g].qubits.iter().all(|&q| head(q) == Some(g)))
            .collect();
        f.sort_unstable();
        f.dedup();
        f
    }

    fn physical(&self, s: &State, g: usize) -> Vec<usize> {
        self.gates[g].qubits.iter().map(|&q| s.placement.physical(q)).collect()
    }

    fn schedule(&self, s: &mut State, qubits: &[usize], layers: usize, weight: usize) {
        let l = qubits.iter().map(|&q| s.level[q]).max().unwrap_or(0) + layers;
        let t = qubits.iter().map(|&q| s.time[q]).max().unwrap_or(0) + weight;
        for &q in qubits {
            s.level[q] = l;
            s.time[q] = t;
        }
    }

    fn execute_ready(&self, s: &mut State) {
        // always the lowest-index executable gate, so unblocked circuits
        // keep their gate order
        loop {
            let ready = self.frontier(s).into_iter().find_map(|g| {
                let phys = self.physical(s, g);
                (phys.len() == 1 || self.device.adjacent(phys[0], phys[1])).then_some((g, phys))
            });
            let Some((g, phys)) = ready else { return };
            let weight = if phys.len() == 1 { 1 } else { 2 };
            self.schedule(s, &phys, 1, weight);
            s.out.push(Gate {
                kind: self.gates[g].kind.clone(),
                qubits: phys,
            });
            for &q in &self.gates[g].qubits {
                s.next[q] += 1;
            }
            s.remaining -= 1;
        }
    }

    fn apply_swap(&self, s: &mut State, a: usize, b: usize) {
        self.schedule(s, &[a, b], self.swap_layers, self.swap_weight);
        s.placement.swap_physical(a, b);
        s.out.push(Gate::swap(a, b));
        s.swaps += 1;
    }

    /// Frontier gates waiting on a SWAP, with their physical qubits.
    fn blocked(&self, s: &State) -> Vec<(usize, usize, usize)> {
        self.frontier(s)
            .into_iter()
            .filter_map(|g| match self.physical(s, g)[..] {
                [a, b] if !self.device.adjacent(a, b) => Some((g, a, b)),
                _ => None,
            })
            .collect()
    }

    /// SWAPs that move one end of a blocked gate one step closer to the other.
    fn moves(&self, a: usize, b: usize) -> Vec<(usize, usize)> {
        let d = self.device.distance(a, b);
        let mut out = Vec::new();
        for (from, to) in [(a, b), (b, a)] {
            for &n in self.device.neighbors(from) {
                if self.device.distance(n, to) < d {
                    out.push((from.min(n), from.max(n)));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn candidates(&self, s: &State) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.blocked(s).into_iter().flat_map(|(_, a, b)| self.moves(a, b)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Move the nearest blocked gate one step along a shortest path.
    fn closest_first(&self, s: &State) -> (usize, usize) {
        let (_, a, b) = self
            .blocked(s)
            .into_iter()
            .min_by_key(|&(g, a, b)| (self.device.distance(a, b), g))
            .expect("a blocked gate remains");
        self.moves(a, b)[0]
    }

    fn heuristic(&self, s: &State) -> (usize, usize) {
        match self.opts.objective {
            Objective::Swaps => self.closest_first(s),
            Objective::Depth => {
                let mut best = None;
                for (g, a, b) in self.blocked(s) {
                    let d = self.device.distance(a, b);
                    for (u, v) in self.moves(a, b) {
                        let swap_end = s.time[u].max(s.time[v]) + self.swap_weight;
                        let partner = if u == a || v == a { b } else { a };
                        let finish = swap_end.max(s.time[partner]) + self.swap_weight * (d - 2) + 2;
                        let key = (finish, g, u, v);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
                let (_, _, u, v) = best.expect("a blocked gate remains");
                (u, v)
            }
        }
    }

    /// Lower is better: cost so far plus an estimate for the blocked gates.
    fn score(&self, s: &State) -> (usize, usize, usize) {
        let blocked = self.blocked(s);
        let lookahead: usize = blocked.iter().map(|&(_, a, b)| self.device.distance(a, b) - 1).sum();
        match self.opts.objective {
            Objective::Swaps => (s.swaps + lookahead, s.remaining, 0),
            Objective::Depth => {
                let makespan = s.time.iter().copied().max().unwrap_or(0);
                let finish = blocked
                    .iter()
                    .map(|&(_, a, b)| {
                        s.time[a].max(s.time[b]) + self.swap_weight * (self.device.distance(a, b) - 1) + 2
                    })
                    .max()
                    .unwrap_or(0);
                (makespan.max(finish), lookahead, s.remaining)
            }
        }
    }

    fn search(&self, s: &State, width: usize, depth: usize) -> (usize, usize) {
        let mut beam: Vec<((usize, usize), State)> = vec![];
        let expand = |first: Option<(usize, usize)>, s: &State, into: &mut Vec<((usize, usize), State)>| {
            for (a, b) in self.candidates(s) {
                let mut child = s.clone();
                self.apply_swap(&mut child, a, b);
                self.execute_ready(&mut child);
                into.push((first.unwrap_or((a, b)), child));
            }
        };
        expand(None, s, &mut beam);
        for _ in 1..depth {
            beam.sort_by_key(|(_, c)| self.score(c));
            beam.truncate(width);
            let mut next = Vec::new();
            for (first, child) in &beam {
                if child.remaining == 0 {
                    next.push((*first, child.clone()));
                } else {
                    expand(Some(*first), child, &mut next);
                }
            }
            beam = next;
        }
        beam.into_iter()
            .min_by_key(|(_, c)| self.score(c))
            .map(|(first, _)| first)
            .expect("a blocked gate has at least one move")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::random::{random_circuit, RandomCircuitConfig};
    use crate::tensor::circuits_equivalent;
    use proptest::prelude::*;

    fn all_options() -> Vec<RouteOptions> {
        let mut v = Vec::new();
        for objective in [Objective::Swaps, Objective::Depth] {
            for scheduler in [Scheduler::Heuristic, Scheduler::default()] {
                for placement in [InitialPlacement::Identity, InitialPlacement::Greedy] {
                    v.push(RouteOptions {
                        objective,
                        scheduler,
                        placement,
                        decompose_swaps: false,
                    });
                }
            }
        }
        v
    }

    /// Fewest SWAPs that bring logical `a` and `b` together, by BFS over
    /// placements.
    fn min_swaps(d: &Device, start: &Placement, a: usize, b: usize) -> usize {
        use std::collections::{HashSet, VecDeque};
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([(start.clone(), 0)]);
        while let Some((p, k)) = queue.pop_front() {
            if d.adjacent(p.physical(a), p.physical(b)) {
                return k;
            }
            for (u, v) in d.edges() {
                let mut q = p.clone();
                q.swap_physical(u, v);
                if seen.insert(q.clone()) {
                    queue.push_back((q, k + 1));
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn one_swap_on_a_line() {
        let d = Device::line(3);
        let c = QuantumCircuit::from_gates(3, [Gate::cx(0, 2)]).unwrap();
        for opts in all_options() {
            let r = route(&c, &d, &opts).unwrap();
            let expected = min_swaps(&d, &r.initial_placement, 0, 2);
            assert_eq!(r.swap_count, expected, "{opts:?}");
            validate_mapping(&r, &d).unwrap();
        }
        let adjacent = QuantumCircuit::from_gates(3, [Gate::cx(0, 1), Gate::cx(2, 1)]).unwrap();
        assert_eq!(route(&adjacent, &d, &RouteOptions::default()).unwrap().swap_count, 0);
    }

    #[test]
    fn single_gate_instances_are_optimal() {
        for d in [Device::line(3), Device::line(4), Device::star(4), Device::t_shape()] {
            let n = d.n_physical();
            for a in 0..n {
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    let c = QuantumCircuit::from_gates(n, [Gate::cx(a, b)]).unwrap();
                    let r = route(&c, &d, &RouteOptions::default()).unwrap();
                    let start = Placement::identity(n, n);
                    assert_eq!(r.swap_count, min_swaps(&d, &start, a, b), "{} cx {a} {b}", d.name());
                }
            }
        }
    }

    #[test]
    fn delay_weights() {
        let d = Device::line(3);
        let c = QuantumCircuit::from_gates(3, [Gate::h(0), Gate::cx(0, 2)]).unwrap();
        let opts = RouteOptions {
            scheduler: Scheduler::Heuristic,
            ..Default::default()
        };
        let r = route(&c, &d, &opts).unwrap();
        // h, then the SWAP and CX in sequence on the shared qubit
        assert_eq!(r.swap_count, 1);
        assert_eq!(r.mapped_delay, 1 + 2 + 2);
        assert_eq!(r.mapped_depth, 3);
        assert_eq!(r.mapped_delay, r.mapped_circuit.statistics().delay);
        let decomposed = route(
            &c,
            &d,
            &RouteOptions {
                decompose_swaps: true,
                ..opts
            },
        )
        .unwrap();
        assert_eq!(decomposed.mapped_delay, 1 + 6 + 2);
        assert_eq!(decomposed.mapped_depth, 5);
    }

    #[test]
    fn complete_device_needs_no_swaps() {
        let c = random_circuit(&RandomCircuitConfig::clifford_t(5, 60), 3);
        for opts in all_options() {
            let r = route(&c, &Device::complete(5), &opts).unwrap();
            assert_eq!(r.swap_count, 0);
            if opts.placement == InitialPlacement::Identity {
                assert_eq!(r.mapped_circuit.gates, c.gates);
            }
        }
    }

    #[test]
    fn errors() {
        let c = QuantumCircuit::new(6);
        assert!(matches!(route(&c, &Device::t_shape(), &RouteOptions::default()), Err(RouteError::TooManyQubits { .. })));
        let mut c = QuantumCircuit::new(3);
        c.add(GateKind::CCX, &[0, 1, 2]).unwrap();
        assert!(matches!(route(&c, &Device::line(3), &RouteOptions::default()), Err(RouteError::Arity { arity: 3, .. })));
    }

    #[test]
    fn validation_catches_tampering() {
        let d = Device::line(3);
        let c = QuantumCircuit::from_gates(3, [Gate::cx(0, 2)]).unwrap();
        let r = route(&c, &d, &RouteOptions::default()).unwrap();
        let mut bad = r.clone();
        bad.mapped_circuit.gates.push(Gate::cx(0, 2));
        assert!(matches!(validate_mapping(&bad, &d), Err(MappingError::NotAdjacent { .. })));
        let mut bad = r.clone();
        bad.final_placement = bad.initial_placement.clone();
        assert_eq!(validate_mapping(&bad, &d), Err(MappingError::FinalPlacement));
    }

    #[test]
    fn input_swaps_survive_unmapping() {
        let d = Device::line(3);
        let c = QuantumCircuit::from_gates(3, [Gate::t(0), Gate::swap(0, 2), Gate::h(2), Gate::cx(2, 1)]).unwrap();
        let r = route(&c, &d, &RouteOptions::default()).unwrap();
        validate_mapping(&r, &d).unwrap();
        assert!(circuits_equivalent(&c, &unmap(&r).unwrap()).unwrap().equivalent);
    }

    #[test]
    fn routing_is_deterministic() {
        let c = random_circuit(&RandomCircuitConfig::clifford_t(5, 50), 11);
        for opts in all_options() {
            let a = route(&c, &Device::t_shape(), &opts).unwrap();
            let b = route(&c, &Device::t_shape(), &opts).unwrap();
            assert_eq!(a, b);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn unmapped_circuit_is_equivalent(n in 2usize..6, len in 0usize..40, seed in any::<u64>(), which in 0usize..8) {
            let c = random_circuit(&RandomCircuitConfig::clifford_t(n, len), seed);
            let opts = all_options()[which];
            for d in [Device::t_shape(), Device::heavy_hex_fragment(6), Device::line(n)] {
                let r = route(&c, &d, &opts).unwrap();
                prop_assert!(validate_mapping(&r, &d).is_ok());
                prop_assert!(r.initial_placement.n_logical() == n);
                let back = unmap(&r).unwrap();
                prop_assert!(circuits_equivalent(&c, &back).unwrap().equivalent);
                prop_assert_eq!(r.swap_count, r.mapped_circuit.gates.iter().filter(|g| g.kind == GateKind::Swap).count());
            }
        }
    }
}
