// SPDX-License-Identifier: Apache-2.0

use anyhow::{bail, ensure};
use log::info;
use qsynth::device::{
    route, unmap, validate_mapping, InitialPlacement, Objective, RouteOptions, Scheduler,
};
use qsynth::tableau::{full_optimize, hopt, optimize_phase_polynomials, tmerge, Tableau};
use qsynth::tensor::circuits_equivalent;
use qsynth::zx::rules::{clifford_simp, interior_clifford_simp};
use qsynth::zx::{full_reduce_with, ReduceOptions};

use super::id_of;
use crate::args::{ArgumentSpec, ParsedArgs, Value, ValueKind};
use crate::shell::{Command, Shell};

/// Gate-level routine built from the ZX passes.
pub const QZQ: &str = "qc2zx; zx optimize --full; zx2qc; qcir optimize";
/// Gate-level routine built from the tableau passes.
pub const QTABLQ: &str = "qc2tabl; tableau optimize full; tabl2qc; qcir optimize";

fn adjoint(sh: &mut Shell, _: &ParsedArgs) -> anyhow::Result<()> {
    let c = sh.session.circuits.focused_mut()?;
    *c = c.adjoint()?;
    Ok(())
}

fn compose(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let other = sh.session.circuits.get(id_of(args, "id")?)?.clone();
    let c = sh.session.circuits.focused_mut()?;
    *c = c.compose(&other)?;
    Ok(())
}

fn optimize_circuit(sh: &mut Shell, _: &ParsedArgs) -> anyhow::Result<()> {
    let c = sh.session.circuits.focused_mut()?;
    let before = c.gates.len();
    *c = c.basic_optimize();
    info!("qcir optimize: {before} -> {} gates", c.gates.len());
    Ok(())
}

pub(super) fn circuit_passes(cmd: Command) -> Command {
    cmd.subcommand(Command::new("adjoint", "replace the focused circuit with its adjoint").action(adjoint))
        .subcommand(
            Command::new("compose", "append another circuit to the focused one")
                .arg(ArgumentSpec::positional("id", ValueKind::Integer).help("the id of the circuit to append"))
                .action(compose),
        )
        .subcommand(Command::new("optimize", "basic optimization passes").action(optimize_circuit))
}

fn optimize_zx(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let d = sh.session.zx.focused_mut()?;
    if args.flag("interior-clifford") || args.flag("clifford") {
        let mut g = d.to_graph_like();
        let n = if args.flag("clifford") { clifford_simp(&mut g) } else { interior_clifford_simp(&mut g) };
        info!("zx optimize: {n} rewrites");
        *d = g;
        return Ok(());
    }
    let (g, report) = full_reduce_with(
        d,
        ReduceOptions {
            early_stop: args.flag("early-stop"),
        },
    );
    info!(
        "zx optimize --full: {} rewrites in {} rounds, T-count {} -> {}",
        report.rewrites,
        report.rounds,
        d.t_count(),
        g.t_count()
    );
    ensure!(!report.hit_cap, "full reduction hit its round cap");
    *d = g;
    Ok(())
}

pub(super) fn zx_passes(cmd: Command) -> Command {
    cmd.subcommand(
        Command::new("optimize", "simplify the focused ZX-diagram")
            .arg(ArgumentSpec::flag("-f", "--full").help("full reduction (the default)"))
            .arg(ArgumentSpec::flag("-i", "--interior-clifford").help("only interior Clifford simplification"))
            .arg(ArgumentSpec::flag("-c", "--clifford").help("only Clifford simplification"))
            .arg(ArgumentSpec::flag("-e", "--early-stop").help("stop gadget pivots once they stop paying off"))
            .action(optimize_zx),
    )
}

fn rewrite_tableau(sh: &mut Shell, name: &str, f: impl FnOnce(&Tableau) -> Tableau) -> anyhow::Result<()> {
    let t = sh.session.tableaux.focused_mut()?;
    let before = t.t_count();
    *t = f(t);
    info!("tableau optimize {name}: T-count {before} -> {}", t.t_count());
    Ok(())
}

fn run_tmerge(sh: &mut Shell, _: &ParsedArgs) -> anyhow::Result<()> {
    rewrite_tableau(sh, "tmerge", tmerge)
}

fn run_hopt(sh: &mut Shell, _: &ParsedArgs) -> anyhow::Result<()> {
    rewrite_tableau(sh, "hopt", hopt)
}

fn run_phasepoly(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    match args.str("strategy") {
        Some("todd") => rewrite_tableau(sh, "phasepoly", optimize_phase_polynomials),
        other => bail!("unknown strategy {other:?}"),
    }
}

fn run_full(sh: &mut Shell, _: &ParsedArgs) -> anyhow::Result<()> {
    let t = sh.session.tableaux.focused_mut()?;
    let (out, report) = full_optimize(t);
    *t = out;
    let counts: Vec<String> = report.t_counts.iter().map(ToString::to_string).collect();
    info!("tableau optimize full: {} rounds, T-count {}", report.rounds, counts.join(" -> "));
    Ok(())
}

pub(super) fn tableau_passes(cmd: Command) -> Command {
    cmd.subcommand(
        Command::new("optimize", "optimize the focused tableau")
            .subcommand(Command::new("tmerge", "phase-merging optimization").action(run_tmerge))
            .subcommand(Command::new("hopt", "internal H-gate optimization").action(run_hopt))
            .subcommand(
                Command::new("phasepoly", "phase polynomial optimization")
                    .arg(
                        ArgumentSpec::positional("strategy", ValueKind::Choice(vec!["todd".into()]))
                            .default(Value::Str("todd".into()))
                            .help("optimization strategy"),
                    )
                    .action(run_phasepoly),
            )
            .subcommand(
                Command::new("full", "repeat tmerge, hopt and phasepoly until the T-count converges")
                    .action(run_full),
            ),
    )
}

fn duostra(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let width = id_of(args, "width")?;
    let depth = id_of(args, "depth")?;
    let opts = RouteOptions {
        objective: match args.str("objective") {
            Some("depth") => Objective::Depth,
            _ => Objective::Swaps,
        },
        scheduler: match args.str("scheduler") {
            Some("heuristic") => Scheduler::Heuristic,
            _ => Scheduler::Search { width, depth },
        },
        placement: if args.flag("greedy") { InitialPlacement::Greedy } else { InitialPlacement::Identity },
        decompose_swaps: args.flag("decompose-swaps"),
    };
    let device = sh.session.devices.focused()?.clone();
    let c = sh.session.circuits.focused()?.clone();
    let r = route(&c, &device, &opts)?;
    if args.flag("check") {
        validate_mapping(&r, &device)?;
        ensure!(
            circuits_equivalent(&c, &unmap(&r)?)?.equivalent,
            "routed circuit is not equivalent to the input"
        );
    }
    let placement: Vec<String> = r.final_placement.as_slice().iter().map(ToString::to_string).collect();
    sh.session.println(&format!(
        "SWAPs: {}  depth: {}  delay: {}  final placement: {}",
        r.swap_count,
        r.mapped_depth,
        r.mapped_delay,
        placement.join(" ")
    ));
    let name = if c.name.is_empty() { String::new() } else { format!("{}_mapped", c.name) };
    sh.session.circuits.add(r.mapped_circuit.with_name(name));
    Ok(())
}

fn qzq(sh: &mut Shell, _: &ParsedArgs) -> anyhow::Result<()> {
    sh.run_line(QZQ)?;
    Ok(())
}

fn qtablq(sh: &mut Shell, _: &ParsedArgs) -> anyhow::Result<()> {
    sh.run_line(QTABLQ)?;
    Ok(())
}

pub(super) fn commands() -> Vec<Command> {
    let choice = |cs: &[&str]| ValueKind::Choice(cs.iter().map(|c| c.to_string()).collect());
    vec![
        Command::new("duostra", "map the focused circuit onto the focused device")
            .arg(
                ArgumentSpec::option("-o", "--objective", choice(&["swaps", "depth"]))
                    .default(Value::Str("swaps".into()))
                    .help("what the router minimizes"),
            )
            .arg(
                ArgumentSpec::option("-s", "--scheduler", choice(&["search", "heuristic"]))
                    .default(Value::Str("search".into()))
                    .help("SWAP selection strategy"),
            )
            .arg(
                ArgumentSpec::option("-w", "--width", ValueKind::Integer)
                    .default(Value::Int(4))
                    .help("beam width of the search scheduler"),
            )
            .arg(
                ArgumentSpec::option("-d", "--depth", ValueKind::Integer)
                    .default(Value::Int(2))
                    .help("lookahead depth of the search scheduler"),
            )
            .arg(ArgumentSpec::flag("-g", "--greedy").help("greedy initial placement instead of the identity"))
            .arg(ArgumentSpec::flag("", "--decompose-swaps").help("charge each SWAP as three CX"))
            .arg(ArgumentSpec::flag("-c", "--check").help("validate the mapping and check equivalence"))
            .action(duostra),
        Command::new("qzq", "ZX-calculus-based synthesis routine").action(qzq),
        Command::new("qtablq", "tableau-based synthesis routine").action(qtablq),
    ]
}
