//! One line per acceptance criterion; exits nonzero if a hard criterion fails.

use std::collections::{BTreeSet, VecDeque};
use std::path::PathBuf;
use std::process::{Command as Process, ExitCode};
use std::time::{Duration, Instant};

use qsynth::circuit::random::{random_circuit, RandomCircuitConfig};
use qsynth::circuit::{parse_qasm, write_qasm, Gate, QuantumCircuit};
use qsynth::device::{route, unmap, validate_mapping, Device, Objective, RouteOptions, Scheduler};
use qsynth::gf2::BitVec;
use qsynth::tableau::{
    full_optimize, hopt, optimize_phase_polynomials, signature, tmerge, todd, CliffordTableau, PhasePolynomial,
    Tableau, TableauElement, MAX_FULL_ROUNDS,
};
use qsynth::tensor::circuits_equivalent;
use qsynth::zx::{extract_circuit, full_reduce, write_zx, ZXDiagram};
use qsynth_shell::{OutputMode, Shell};

const FIDELITY_FLOOR: f64 = 1.0 - 1e-9;
const CORPUS_SIZE: u64 = 200;
const FUZZ_BUDGET: Duration = Duration::from_secs(120);
const BENCH_BUDGET: Duration = Duration::from_secs(60);
/// FNV-1a over every serialized output of the determinism check, pinned so a
/// run on another platform is compared against this one.
const PINNED_DIGEST: u64 = 0xc585_0d56_f570_2855;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// 3 to 6 qubits, 10 to 40 gates, seeds 0..200.
fn corpus() -> Vec<QuantumCircuit> {
    (0..CORPUS_SIZE)
        .map(|seed| {
            let n = 3 + (seed % 4) as usize;
            let len = 10 + (seed * 7 % 31) as usize;
            random_circuit(&RandomCircuitConfig::clifford_t(n, len), seed)
        })
        .collect()
}

fn zx_route(c: &QuantumCircuit) -> QuantumCircuit {
    let d = full_reduce(&ZXDiagram::from_circuit(c).unwrap());
    extract_circuit(&d).unwrap().basic_optimize()
}

fn tableau_route(c: &QuantumCircuit) -> QuantumCircuit {
    let t = Tableau::from_circuit(c).unwrap();
    optimize_phase_polynomials(&hopt(&tmerge(&t))).to_circuit()
}

fn fidelity(a: &QuantumCircuit, b: &QuantumCircuit) -> f64 {
    circuits_equivalent(a, b).map(|r| r.fidelity).unwrap_or(0.0)
}

fn equivalence_fuzz(corpus: &[QuantumCircuit]) -> Outcome {
    let start = Instant::now();
    let device = Device::heavy_hex_fragment(6);
    let mut worst = [1.0f64; 3];
    let mut failures = Vec::new();
    for (i, c) in corpus.iter().enumerate() {
        let routed = route(c, &device, &RouteOptions::default()).unwrap();
        let outs = [zx_route(c), tableau_route(c), unmap(&routed).unwrap()];
        for (k, out) in outs.iter().enumerate() {
            let f = fidelity(c, out);
            worst[k] = worst[k].min(f);
            if f < FIDELITY_FLOOR {
                failures.push(format!("seed {i} pipeline {}", ["zx", "tableau", "route"][k]));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < FUZZ_BUDGET;
    outcome(
        pass,
        format!(
            "{} circuits x 3 pipelines, min fidelity zx {:.12} tableau {:.12} route {:.12}, {:.1}s{}",
            corpus.len(),
            worst[0],
            worst[1],
            worst[2],
            elapsed.as_secs_f64(),
            if failures.is_empty() { String::new() } else { format!(", failures: {}", failures.join("; ")) }
        ),
    )
}

fn monotonicity(corpus: &[QuantumCircuit]) -> Outcome {
    let mut bad = Vec::new();
    let (mut t_in, mut t_zx, mut t_tab) = (0, 0, 0);
    for (i, c) in corpus.iter().enumerate() {
        let s = c.statistics();
        t_in += s.t_count;
        for (name, out) in [("zx", zx_route(c)), ("tableau", tableau_route(c))] {
            let o = out.statistics();
            if name == "zx" {
                t_zx += o.t_count;
            } else {
                t_tab += o.t_count;
            }
            if o.t_count > s.t_count || o.rz_count > s.rz_count {
                bad.push(format!("seed {i} {name}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("total T {t_in} -> zx {t_zx}, tableau {t_tab}; violations: {}", bad.len()),
    )
}

fn bits(n: usize, qs: &[usize]) -> BitVec {
    BitVec::from_bools(&(0..n).map(|q| qs.contains(&q)).collect::<Vec<_>>())
}

fn ccz_terms(n: usize, q: [usize; 3], p: &mut PhasePolynomial) {
    for mask in 1..8u32 {
        let qs: Vec<usize> = (0..3).filter(|b| mask >> b & 1 == 1).map(|b| q[b]).collect();
        p.push(bits(n, &qs), if qs.len() % 2 == 1 { 1 } else { 7 }).unwrap();
    }
}

/// Symmetric cubic tensor of a column multiset: `Σ_c c_a c_b c_c mod 2`.
fn cubic_tensor(n: usize, cols: &[Vec<bool>]) -> Vec<bool> {
    let mut t = vec![false; n * n * n];
    for col in cols {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if col[a] && col[b] && col[c] {
                        t[(a * n + b) * n + c] ^= true;
                    }
                }
            }
        }
    }
    t
}

/// Smallest multiset of nonzero 3-bit columns (at most `cap`) whose cubic
/// tensor equals `target`, searched exhaustively.
fn min_columns(target: &[bool], cap: usize) -> Option<usize> {
    let vecs: Vec<Vec<bool>> = (1..8u32).map(|m| (0..3).map(|b| m >> b & 1 == 1).collect()).collect();
    fn go(vecs: &[Vec<bool>], from: usize, left: usize, acc: &mut Vec<Vec<bool>>, target: &[bool]) -> bool {
        if left == 0 {
            return cubic_tensor(3, acc) == target;
        }
        for i in from..vecs.len() {
            acc.push(vecs[i].clone());
            let hit = go(vecs, i, left - 1, acc, target);
            acc.pop();
            if hit {
                return true;
            }
        }
        false
    }
    (0..=cap).find(|&k| go(&vecs, 0, k, &mut Vec::new(), target))
}

fn pair_circuit(cliff: &CliffordTableau, p: &PhasePolynomial) -> QuantumCircuit {
    let mut t = Tableau::new(p.n_qubits());
    t.push(TableauElement::Clifford(cliff.clone())).unwrap();
    t.push(TableauElement::Rotations(p.to_rotations())).unwrap();
    t.to_circuit()
}

fn todd_spot_checks() -> Outcome {
    let mut one = PhasePolynomial::new(3);
    ccz_terms(3, [0, 1, 2], &mut one);
    let id3 = CliffordTableau::identity(3);
    let (c1, q1) = todd(&id3, &one);
    let cols: Vec<Vec<bool>> = one.columns().iter().map(|c| (0..3).map(|i| c.get(i)).collect()).collect();
    let target = cubic_tensor(3, &cols);
    let lib_sig = signature(&one).unwrap();
    let sig_agrees = (0..3)
        .flat_map(|a| (0..3).flat_map(move |b| (0..3).map(move |c| (a, b, c))))
        .all(|(a, b, c)| lib_sig.get(a, b, c) == target[(a * 3 + b) * 3 + c]);
    let brute = min_columns(&target, 6);
    let single_ok = q1.len() == 7
        && brute.is_none()
        && sig_agrees
        && fidelity(&pair_circuit(&id3, &one), &pair_circuit(&c1, &q1)) >= FIDELITY_FLOOR;

    let mut two = PhasePolynomial::new(6);
    ccz_terms(6, [0, 1, 2], &mut two);
    ccz_terms(6, [3, 4, 5], &mut two);
    let id6 = CliffordTableau::identity(6);
    let (c2, q2) = todd(&id6, &two);
    let f2 = fidelity(&pair_circuit(&id6, &two), &pair_circuit(&c2, &q2));
    let two_ok = two.len() == 14 && q2.len() < 14 && f2 >= FIDELITY_FLOOR;
    outcome(
        single_ok && two_ok,
        format!(
            "CCZ: {} columns, none with <= 6 columns matches its signature: {}; two CCZs: 14 -> {} columns, fidelity {:.12}",
            q1.len(),
            brute.is_none(),
            q2.len(),
            f2
        ),
    )
}

fn full_convergence(corpus: &[QuantumCircuit]) -> Outcome {
    let mut max_rounds = 0;
    let mut bad = Vec::new();
    for (i, c) in corpus.iter().enumerate() {
        let (out, r) = full_optimize(&Tableau::from_circuit(c).unwrap());
        max_rounds = max_rounds.max(r.rounds);
        let monotone = r.t_counts.windows(2).all(|w| w[1] <= w[0]);
        if !r.converged || r.rounds > MAX_FULL_ROUNDS || !monotone || fidelity(c, &out.to_circuit()) < FIDELITY_FLOOR {
            bad.push(i);
        }
    }
    outcome(
        bad.is_empty(),
        format!("max rounds {max_rounds} (cap {MAX_FULL_ROUNDS}), failing seeds {bad:?}"),
    )
}

/// Fewest SWAPs to bring logical qubits `a` and `b` onto an edge, by BFS
/// over all placements.
fn min_swaps(device: &Device, a: usize, b: usize) -> usize {
    let n = device.n_physical();
    let start: Vec<usize> = (0..n).collect();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0)]);
    while let Some((p, d)) = queue.pop_front() {
        if device.distance(p[a], p[b]) == 1 {
            return d;
        }
        for (u, v) in device.edges() {
            let mut next = p.clone();
            for x in next.iter_mut() {
                if *x == u {
                    *x = v;
                } else if *x == v {
                    *x = u;
                }
            }
            if seen.insert(next.clone()) {
                queue.push_back((next, d + 1));
            }
        }
    }
    unreachable!("connected device")
}

fn routing_checks(corpus: &[QuantumCircuit]) -> Outcome {
    let line = Device::line(3);
    let mut notes = Vec::new();
    let mut ok = true;
    for a in 0..3 {
        for b in 0..3 {
            if a == b {
                continue;
            }
            let c = QuantumCircuit::from_gates(3, [Gate::cx(a, b)]).unwrap();
            let r = route(&c, &line, &RouteOptions::default()).unwrap();
            if r.swap_count != min_swaps(&line, a, b) || validate_mapping(&r, &line).is_err() {
                ok = false;
                notes.push(format!("cx({a},{b}) took {}", r.swap_count));
            }
        }
    }
    let fragment = Device::heavy_hex_fragment(6);
    let mut validated = 0;
    for (i, c) in corpus.iter().enumerate() {
        let opts = RouteOptions {
            objective: if i % 2 == 0 { Objective::Swaps } else { Objective::Depth },
            scheduler: if i % 3 == 0 { Scheduler::Heuristic } else { Scheduler::default() },
            ..Default::default()
        };
        let r = route(c, &fragment, &opts).unwrap();
        if validate_mapping(&r, &fragment).is_ok() {
            validated += 1;
        } else {
            ok = false;
            notes.push(format!("seed {i} invalid"));
        }
    }
    // h on q0 then cx(0,2) on the line: 1 + SWAP 2 + CX 2 along the critical path
    let c = QuantumCircuit::from_gates(3, [Gate::h(0), Gate::cx(0, 2)]).unwrap();
    let r = route(&c, &line, &RouteOptions::default()).unwrap();
    let delay_ok = r.mapped_delay == 5 && r.mapped_circuit.statistics().delay == 5;
    let weights = QuantumCircuit::from_gates(2, [Gate::h(0), Gate::t(0), Gate::cx(0, 1)]).unwrap();
    let weights_ok = weights.statistics().delay == 4;
    ok &= delay_ok && weights_ok;
    outcome(
        ok,
        format!(
            "line3 single-CX SWAPs match exhaustive search, {validated}/{} fuzz mappings valid, delay {} with weights 1/2{}",
            corpus.len(),
            r.mapped_delay,
            if notes.is_empty() { String::new() } else { format!(": {}", notes.join("; ")) }
        ),
    )
}

fn shell_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn cli_golden() -> Outcome {
    let mut sh = Shell::new(OutputMode::Capture);
    let help = match sh.execute_line("qcir read -h") {
        Ok(()) => sh.session.take_output(),
        Err(e) => return outcome(false, format!("help failed: {e}")),
    };
    let golden = std::fs::read_to_string(shell_dir().join("tests/golden/qcir_read_help.txt")).unwrap_or_default();
    let sections = ["Usage: qcir read [-h] [-r] <string filepath>", "Description:", "Positional Arguments:", "Options:"];
    let mut pos = 0;
    let ordered = sections.iter().all(|s| match help[pos..].find(s) {
        Some(i) => {
            pos += i;
            true
        }
        None => false,
    });
    let help_ok = help == golden && ordered && help.contains("flag  -r, --replace");

    let bin = env!("CARGO_BIN_EXE_qsynth");
    let script = shell_dir().join("scripts/zxopt.qsyn");
    let bench = shell_dir().join("benchmarks/carry5.qasm");
    let run = Process::new(bin).env("QSYNTH_RC", "/nonexistent").arg(&script).arg(&bench).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    let stats = stdout.matches("T-count").count();
    let script_ok = run.status.success()
        && stdout.contains("--- pre-optimization  ---")
        && stdout.contains("--- post-optimization ---")
        && stats == 2;
    let bare = Process::new(bin).env("QSYNTH_RC", "/nonexistent").arg(&script).output().unwrap();
    let stderr = String::from_utf8_lossy(&bare.stderr);
    let arity_ok = !bare.status.success() && stderr.contains("INPUT");
    outcome(
        help_ok && script_ok && arity_ok,
        format!("golden help {help_ok}, zxopt script {script_ok}, zero-arg error names INPUT {arity_ok}"),
    )
}

fn fnv1a(digest: &mut u64, bytes: &[u8]) {
    for &b in bytes {
        *digest ^= b as u64;
        *digest = digest.wrapping_mul(0x100_0000_01b3);
    }
}

fn serialized(corpus: &[QuantumCircuit]) -> u64 {
    let device = Device::heavy_hex_fragment(6);
    let mut digest = 0xcbf2_9ce4_8422_2325;
    for c in corpus {
        let d = full_reduce(&ZXDiagram::from_circuit(c).unwrap());
        let r = route(c, &device, &RouteOptions::default()).unwrap();
        let (t, _) = full_optimize(&Tableau::from_circuit(c).unwrap());
        for text in [write_zx(&d), write_qasm(&zx_route(c)), write_qasm(&tableau_route(c)), t.to_string(), write_qasm(&r.mapped_circuit)] {
            fnv1a(&mut digest, text.as_bytes());
        }
    }
    digest
}

fn determinism(corpus: &[QuantumCircuit]) -> Outcome {
    let regenerated = self::corpus();
    let same_corpus = regenerated.iter().zip(corpus).all(|(a, b)| write_qasm(a) == write_qasm(b));
    let first = serialized(corpus);
    let second = serialized(&regenerated);
    let pinned = first == PINNED_DIGEST;
    outcome(
        same_corpus && first == second && pinned,
        format!("digest {first:016x} on both runs: {}, matches pinned digest: {pinned}", first == second),
    )
}

fn directional() -> Outcome {
    let path = shell_dir().join("benchmarks/carry5.qasm");
    let c = parse_qasm(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let start = Instant::now();
    let zx = zx_route(&c).statistics().t_count;
    let (t, _) = full_optimize(&Tableau::from_circuit(&c).unwrap());
    let tab = t.to_circuit().basic_optimize().statistics().t_count;
    let elapsed = start.elapsed();
    let met = elapsed < BENCH_BUDGET && (tab <= zx || tab as f64 <= zx as f64 * 1.05);
    outcome(met, format!("carry5: tableau T {tab}, ZX T {zx}, {:.2}s", elapsed.as_secs_f64()))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let hard: Vec<(&str, Outcome)> = vec![
        ("1 equivalence fuzz", equivalence_fuzz(&corpus)),
        ("2 T/RZ monotonicity", monotonicity(&corpus)),
        ("3 TODD spot checks", todd_spot_checks()),
        ("4 full optimization converges", full_convergence(&corpus)),
        ("5 routing at toy scale", routing_checks(&corpus)),
        ("6 CLI golden and scripts", cli_golden()),
        ("7 determinism", determinism(&corpus)),
    ];
    let mut failed = 0;
    for (name, o) in &hard {
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    let soft = directional();
    println!(
        "[{}] 8 tableau vs ZX T-count (expectation): {}",
        if soft.pass { "PASS" } else { "MISS" },
        soft.detail
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
