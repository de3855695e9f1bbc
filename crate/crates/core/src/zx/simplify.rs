// SPDX-License-Identifier: Apache-2.0

use super::graph::ZXDiagram;
use super::rules::{clifford_simp, gadget_simp, interior_clifford_simp, pivot_gadget_simp};

/// Hard cap on outer reduction rounds. Reaching it is reported, never
/// silently accepted.
pub const MAX_REDUCE_ROUNDS: usize = 10_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Stop gadget pivots once the two-qubit estimate of the eventual
    /// circuit stops improving over a round.
    pub early_stop: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReduceReport {
    pub rounds: usize,
    pub rewrites: usize,
    pub hit_cap: bool,
    pub stopped_early: bool,
}

/// Edges between spiders; each becomes roughly one CZ or CX on extraction.
fn two_qubit_estimate(d: &ZXDiagram) -> usize {
    d.edges()
        .iter()
        .filter(|&&(u, v, _)| !d.is_boundary(u) && !d.is_boundary(v))
        .count()
}

pub fn full_reduce(d: &ZXDiagram) -> ZXDiagram {
    full_reduce_with(d, ReduceOptions::default()).0
}

pub fn full_reduce_with(d: &ZXDiagram, opts: ReduceOptions) -> (ZXDiagram, ReduceReport) {
    let mut g = d.to_graph_like();
    let mut report = ReduceReport::default();
    report.rewrites += interior_clifford_simp(&mut g);
    report.rewrites += pivot_gadget_simp(&mut g);
    let mut best = two_qubit_estimate(&g);
    loop {
        if report.rounds == MAX_REDUCE_ROUNDS {
            report.hit_cap = true;
            log::warn!("full_reduce hit the round cap of {MAX_REDUCE_ROUNDS}");
            break;
        }
        report.rounds += 1;
        let snapshot = opts.early_stop.then(|| g.clone());
        report.rewrites += clifford_simp(&mut g);
        let i = gadget_simp(&mut g);
        report.rewrites += i + interior_clifford_simp(&mut g);
        let j = pivot_gadget_simp(&mut g);
        report.rewrites += j;
        if let Some(prev) = snapshot {
            let est = two_qubit_estimate(&g);
            if est >= best && j > 0 {
                g = prev;
                report.stopped_early = true;
                // finish without gadget pivots
                report.rewrites += clifford_simp(&mut g) + gadget_simp(&mut g);
                break;
            }
            best = best.min(est);
        }
        if i + j == 0 {
            break;
        }
    }
    g.normalize_boundary_edges();
    log::debug!(
        "full_reduce: {} rounds, {} rewrites, {} spiders left",
        report.rounds,
        report.rewrites,
        g.spider_count()
    );
    (g, report)
}
