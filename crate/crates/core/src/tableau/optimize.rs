// SPDX-License-Identifier: Apache-2.0

use log::{debug, info};

use super::clifford::CliffordTableau;
use super::pauli::{Pauli, PauliRotation, PauliString};
use super::phasepoly::optimize_phase_polynomials;
use super::{Tableau, TableauElement};
use crate::circuit::Gate;

/// Merges equal-axis rotations inside each group when everything between
/// them commutes with the earlier one. Rotations that become Clifford move
/// to the end of their group and are folded into the next Clifford element.
pub fn tmerge(t: &Tableau) -> Tableau {
    let n = t.n_qubits();
    let mut out = Tableau::new(n);
    let mut carry: Option<CliffordTableau> = None;
    for e in t.elements() {
        match e {
            TableauElement::Rotations(rs) => {
                if let Some(c) = carry.take() {
                    out.elements_mut().push(TableauElement::Clifford(c));
                }
                let (kept, moved) = merge_group(rs.clone());
                debug!("tmerge: {} rotations -> {} ({} Clifford)", rs.len(), kept.len(), moved.len());
                out.elements_mut().push(TableauElement::Rotations(kept));
                if !moved.is_empty() {
                    let mut c = CliffordTableau::identity(n);
                    for r in &moved {
                        c.apply_rotation(r).expect("moved rotations are Clifford");
                    }
                    carry = Some(c);
                }
            }
            TableauElement::Clifford(c) => {
                let c = match carry.take() {
                    Some(pre) => pre.then(c),
                    None => c.clone(),
                };
                out.elements_mut().push(TableauElement::Clifford(c));
            }
        }
    }
    if let Some(c) = carry {
        out.elements_mut().push(TableauElement::Clifford(c));
    }
    out
}

/// Returns the surviving rotations and, in application order, the Clifford
/// rotations pushed past them.
fn merge_group(mut rs: Vec<PauliRotation>) -> (Vec<PauliRotation>, Vec<PauliRotation>) {
    let mut moved: Vec<PauliRotation> = Vec::new();
    loop {
        let before = rs.len();
        let mut i = 0;
        while i < rs.len() {
            let mut j = i + 1;
            let mut cur = Some(rs[i].clone());
            while let (Some(r), true) = (cur.as_ref(), j < rs.len()) {
                if rs[j].pauli().same_axis(r.pauli()) {
                    cur = r.with_angle(r.angle() + rs[j].angle());
                    rs.remove(j);
                } else if !rs[j].commutes_with(r) {
                    break;
                } else {
                    j += 1;
                }
            }
            match cur {
                None => {
                    rs.remove(i);
                }
                Some(r) if r.is_clifford() => {
                    rs.remove(i);
                    let inv = r.with_angle(-r.angle()).expect("nonzero");
                    for later in &mut rs[i..] {
                        let p = inv.conjugate(later.pauli()).expect("Clifford rotation");
                        *later = PauliRotation::from_parts(p, later.angle());
                    }
                    moved.insert(0, r);
                }
                Some(r) => {
                    rs[i] = r;
                    i += 1;
                }
            }
        }
        if rs.len() == before {
            return (rs, moved);
        }
    }
}

/// Rewrites the tableau as alternating Clifford elements and groups of
/// diagonal rotations. Rotations are first pushed to the front of every
/// Clifford, then split greedily into blocks of mutually commuting
/// rotations, each diagonalized by its own Clifford.
pub fn hopt(t: &Tableau) -> Tableau {
    let n = t.n_qubits();
    let mut inv = CliffordTableau::identity(n);
    let mut cliff = CliffordTableau::identity(n);
    let mut pending = Vec::new();
    for e in t.elements() {
        match e {
            TableauElement::Clifford(c) => {
                inv = c.inverse().then(&inv);
                cliff = cliff.then(c);
            }
            TableauElement::Rotations(rs) => {
                for r in rs {
                    pending.push(PauliRotation::from_parts(inv.conjugate(r.pauli()), r.angle()));
                }
            }
        }
    }
    let mut blocks: Vec<Vec<PauliRotation>> = Vec::new();
    while !pending.is_empty() {
        let mut block: Vec<PauliRotation> = Vec::new();
        let mut rest: Vec<PauliRotation> = Vec::new();
        for r in pending {
            if block.iter().chain(&rest).all(|o| o.commutes_with(&r)) {
                block.push(r);
            } else {
                rest.push(r);
            }
        }
        blocks.push(block);
        pending = rest;
    }
    info!("hopt: {} diagonal groups", blocks.len());
    let mut out = Tableau::new(n);
    let mut undo = CliffordTableau::identity(n);
    for block in blocks {
        let v = diagonalizer(n, &block);
        let step = undo.then(&v);
        if !step.is_identity() {
            out.elements_mut().push(TableauElement::Clifford(step));
        }
        let diag = block
            .iter()
            .map(|r| PauliRotation::from_parts(v.conjugate(r.pauli()), r.angle()))
            .collect();
        out.elements_mut().push(TableauElement::Rotations(diag));
        undo = v.inverse();
    }
    let last = undo.then(&cliff);
    if !last.is_identity() {
        out.elements_mut().push(TableauElement::Clifford(last));
    }
    out
}

/// A Clifford `V` with `V·P·V†` diagonal for every rotation of a commuting
/// block; the identity when the block is already diagonal.
fn diagonalizer(n: usize, block: &[PauliRotation]) -> CliffordTableau {
    let mut v = CliffordTableau::identity(n);
    if block.iter().all(|r| r.is_diagonal()) {
        return v;
    }
    let mut pivots = vec![false; n];
    for r in block {
        let mut g = v.conjugate(r.pauli());
        if g.is_diagonal() && g.support().all(|q| pivots[q]) {
            continue;
        }
        // earlier generators are single Z's on pivot qubits; strip them
        for q in 0..n {
            if pivots[q] {
                g.set(q, Pauli::I);
            }
        }
        let apply = |v: &mut CliffordTableau, g: &mut PauliString, gate: Gate| {
            g.conjugate_by(&gate).expect("Clifford");
            v.apply_gate(&gate).expect("Clifford");
        };
        let xs: Vec<usize> = (0..n).filter(|&q| g.x_bits().get(q)).collect();
        let q = match xs.first() {
            Some(&q) => {
                for &r in &xs[1..] {
                    apply(&mut v, &mut g, Gate::cx(q, r));
                }
                if g.get(q) == Pauli::Y {
                    apply(&mut v, &mut g, Gate::sdg(q));
                }
                apply(&mut v, &mut g, Gate::h(q));
                q
            }
            None => g.support().next().expect("independent generator is not the identity"),
        };
        let zs: Vec<usize> = g.support().filter(|&r| r != q).collect();
        for r in zs {
            apply(&mut v, &mut g, Gate::cx(r, q));
        }
        pivots[q] = true;
    }
    debug_assert!(block.iter().all(|r| v.conjugate(r.pauli()).is_diagonal()));
    v
}

pub const MAX_FULL_ROUNDS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullReport {
    /// T-count before the first round and after each round.
    pub t_counts: Vec<usize>,
    pub rounds: usize,
    pub converged: bool,
}

/// tmerge, hopt and phase-polynomial optimization in rounds until the
/// T-count stops dropping, at most [`MAX_FULL_ROUNDS`] times.
pub fn full_optimize(t: &Tableau) -> (Tableau, FullReport) {
    let mut cur = t.clone();
    let mut report = FullReport {
        t_counts: vec![cur.t_count()],
        rounds: 0,
        converged: false,
    };
    while report.rounds < MAX_FULL_ROUNDS {
        let next = optimize_phase_polynomials(&hopt(&tmerge(&cur)));
        report.rounds += 1;
        let before = cur.t_count();
        let after = next.t_count();
        report.t_counts.push(after);
        info!("tabl opt full: round {} T-count {before} -> {after}", report.rounds);
        cur = next;
        if after >= before {
            report.converged = true;
            break;
        }
    }
    (cur, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::random::{random_circuit, RandomCircuitConfig};
    use crate::circuit::{Phase, QuantumCircuit};
    use crate::tensor::circuits_equivalent;
    use proptest::prelude::*;

    fn rot(p: &str, k: i64) -> PauliRotation {
        PauliRotation::new(p.parse().unwrap(), Phase::from_quarters(k)).unwrap()
    }

    fn group(n: usize, rs: Vec<PauliRotation>) -> Tableau {
        let mut t = Tableau::new(n);
        t.push(TableauElement::Rotations(rs)).unwrap();
        t
    }

    fn same(a: &Tableau, b: &Tableau) -> bool {
        circuits_equivalent(&a.to_circuit(), &b.to_circuit()).unwrap().equivalent
    }

    #[test]
    fn two_t_gates_become_s() {
        let c = QuantumCircuit::from_gates(1, [Gate::t(0), Gate::t(0)]).unwrap();
        let t = Tableau::from_circuit(&c).unwrap();
        let m = tmerge(&t);
        assert_eq!(m.rotations().count(), 0);
        let TableauElement::Clifford(cl) = m.elements().last().unwrap() else { panic!() };
        let mut s = CliffordTableau::identity(1);
        s.apply_gate(&Gate::s(0)).unwrap();
        assert_eq!(cl, &s);
    }

    #[test]
    fn merges_across_commuting_rotations() {
        let t = group(2, vec![rot("ZI", 1), rot("IX", 1), rot("ZI", 1)]);
        let m = tmerge(&t);
        let rest: Vec<String> = m.rotations().map(ToString::to_string).collect();
        assert_eq!(rest, ["IX π/4"]);
        assert!(same(&t, &m));
    }

    #[test]
    fn does_not_merge_across_anticommuting_rotation() {
        let t = group(1, vec![rot("Z", 1), rot("X", 1), rot("Z", 1)]);
        assert_eq!(tmerge(&t).rotations().count(), 3);
    }

    #[test]
    fn clifford_residue_conjugates_later_rotations() {
        let t = group(1, vec![rot("Z", 1), rot("Z", 1), rot("X", 1)]);
        let m = tmerge(&t);
        let rest: Vec<String> = m.rotations().map(ToString::to_string).collect();
        assert_eq!(rest, ["Y 7π/4"]);
        assert!(same(&t, &m));
    }

    #[test]
    fn hopt_keeps_diagonal_groups() {
        let t = group(2, vec![rot("ZZ", 1), rot("ZI", 3)]);
        assert_eq!(hopt(&t), t);
    }

    #[test]
    fn hopt_changes_basis_of_x_rotation() {
        let t = group(1, vec![rot("X", 1)]);
        let h = hopt(&t);
        assert_eq!(h.elements().len(), 3);
        assert!(matches!(h.elements()[0], TableauElement::Clifford(_)));
        assert!(h.rotations().all(PauliRotation::is_diagonal));
        assert!(same(&t, &h));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn passes_preserve_semantics(n in 1usize..5, len in 0usize..40, seed in any::<u64>()) {
            let c = random_circuit(&RandomCircuitConfig::clifford_t(n, len), seed);
            let t = Tableau::from_circuit(&c).unwrap();
            let m = tmerge(&t);
            prop_assert!(m.non_clifford_count() <= t.non_clifford_count());
            prop_assert!(m.to_circuit().statistics().t_count <= c.statistics().t_count);
            prop_assert!(same(&t, &m));
            let h = hopt(&m);
            prop_assert!(h.rotations().all(PauliRotation::is_diagonal));
            prop_assert_eq!(h.t_count(), m.t_count());
            prop_assert!(same(&t, &h));
        }

        #[test]
        fn full_loop_is_monotone(n in 1usize..5, len in 0usize..40, seed in any::<u64>()) {
            let c = random_circuit(&RandomCircuitConfig::clifford_t(n, len), seed);
            let t = Tableau::from_circuit(&c).unwrap();
            let (out, report) = full_optimize(&t);
            prop_assert!(report.converged);
            prop_assert!(report.rounds <= MAX_FULL_ROUNDS);
            prop_assert!(report.t_counts.windows(2).all(|w| w[1] <= w[0]));
            prop_assert!(same(&t, &out));
        }
    }
}
