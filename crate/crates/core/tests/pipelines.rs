use qsynth::circuit::random::{random_circuit, RandomCircuitConfig};
use qsynth::circuit::{write_qasm, QuantumCircuit};
use qsynth::device::{route, unmap, validate_mapping, Device, Objective, RouteOptions, Scheduler};
use qsynth::tableau::{full_optimize, hopt, optimize_phase_polynomials, tmerge, Tableau};
use qsynth::tensor::circuits_equivalent;
use qsynth::zx::{extract_circuit, full_reduce, write_zx, ZXDiagram};

fn corpus(count: u64, family: fn(usize, usize) -> RandomCircuitConfig) -> Vec<QuantumCircuit> {
    (0..count)
        .map(|seed| {
            let n = 3 + (seed % 4) as usize;
            let len = 10 + (seed * 7 % 31) as usize;
            random_circuit(&family(n, len), 1000 + seed)
        })
        .collect()
}

fn zx_pipeline(c: &QuantumCircuit) -> QuantumCircuit {
    let d = full_reduce(&ZXDiagram::from_circuit(c).unwrap());
    extract_circuit(&d).unwrap().basic_optimize()
}

fn tableau_pipeline(c: &QuantumCircuit) -> QuantumCircuit {
    let t = Tableau::from_circuit(c).unwrap();
    optimize_phase_polynomials(&hopt(&tmerge(&t))).to_circuit()
}

#[test]
fn zx_pipeline_preserves_semantics_and_counts() {
    for c in corpus(60, RandomCircuitConfig::clifford_t) {
        let out = zx_pipeline(&c);
        assert!(circuits_equivalent(&c, &out).unwrap().equivalent, "{}", write_qasm(&c));
        assert!(out.statistics().t_count <= c.statistics().t_count);
    }
}

/// Non-Clifford rotations about either axis.
fn rotations(c: &QuantumCircuit) -> usize {
    c.gates
        .iter()
        .filter(|g| {
            let p = g.kind.z_rotation().or(g.kind.x_rotation());
            p.is_some_and(|p| !p.is_clifford())
        })
        .count()
}

#[test]
fn zx_pipeline_on_general_gates() {
    for c in corpus(40, RandomCircuitConfig::general) {
        let c = c.decompose_multi_controlled();
        let out = zx_pipeline(&c);
        assert!(circuits_equivalent(&c, &out).unwrap().equivalent, "{}", write_qasm(&c));
        assert!(rotations(&out) <= rotations(&c));
    }
}

#[test]
fn tableau_pipeline_preserves_semantics_and_counts() {
    for c in corpus(60, RandomCircuitConfig::clifford_t) {
        let out = tableau_pipeline(&c);
        assert!(circuits_equivalent(&c, &out).unwrap().equivalent, "{}", write_qasm(&c));
        assert!(out.statistics().t_count <= c.statistics().t_count);
        let (full, report) = full_optimize(&Tableau::from_circuit(&c).unwrap());
        assert!(report.converged && report.rounds <= 20);
        assert!(circuits_equivalent(&c, &full.to_circuit()).unwrap().equivalent);
    }
}

#[test]
fn routed_circuits_unmap_to_the_input() {
    let device = Device::heavy_hex_fragment(6);
    for (i, c) in corpus(60, RandomCircuitConfig::clifford_t).into_iter().enumerate() {
        let opts = RouteOptions {
            objective: if i % 2 == 0 { Objective::Swaps } else { Objective::Depth },
            scheduler: if i % 3 == 0 { Scheduler::Heuristic } else { Scheduler::default() },
            ..Default::default()
        };
        let r = route(&c, &device, &opts).unwrap();
        validate_mapping(&r, &device).unwrap();
        assert!(circuits_equivalent(&c, &unmap(&r).unwrap()).unwrap().equivalent);
    }
}

#[test]
fn outputs_are_reproducible() {
    let device = Device::heavy_hex_fragment(6);
    for c in corpus(20, RandomCircuitConfig::clifford_t) {
        let run = || {
            let d = full_reduce(&ZXDiagram::from_circuit(&c).unwrap());
            let r = route(&c, &device, &RouteOptions::default()).unwrap();
            (
                write_zx(&d),
                write_qasm(&zx_pipeline(&c)),
                write_qasm(&tableau_pipeline(&c)),
                write_qasm(&r.mapped_circuit),
            )
        };
        assert_eq!(run(), run());
    }
}
