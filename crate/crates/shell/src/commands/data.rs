// SPDX-License-Identifier: Apache-2.0

//! Manager verbs for every representation, plus `convert` and `equiv`.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use qsynth::circuit::{parse_qasm, write_qasm, QuantumCircuit};
use qsynth::device::Device;
use qsynth::tableau::Tableau;
use qsynth::tensor::{equiv_up_to_global_phase, unitary_of_circuit, unitary_of_zx, Unitary};
use qsynth::zx::{extract_circuit, read_zx, write_zx, ZXDiagram};

use super::{id_arg, id_of};
use crate::args::{ArgumentSpec, ParsedArgs, Value, ValueKind};
use crate::session::{Managed, Manager, Session};
use crate::shell::{Command, Shell};

pub(super) trait Kind {
    type Item: Managed + Clone;
    const CMD: &'static str;
    const NOUN: &'static str;
    fn mgr(s: &mut Session) -> &mut Manager<Self::Item>;
    fn parse(_text: &str, _path: &Path) -> anyhow::Result<Self::Item> {
        bail!("reading a {} is not supported", Self::NOUN)
    }
    fn dump(_item: &Self::Item) -> anyhow::Result<String> {
        bail!("writing a {} is not supported", Self::NOUN)
    }
    fn unitary(item: &Self::Item) -> anyhow::Result<Unitary>;
}

pub(super) struct Qcir;
pub(super) struct Zx;
pub(super) struct Tabl;
pub(super) struct Dev;
pub(super) struct Tensor;

impl Kind for Qcir {
    type Item = QuantumCircuit;
    const CMD: &'static str = "qcir";
    const NOUN: &'static str = "quantum circuit";
    fn mgr(s: &mut Session) -> &mut Manager<QuantumCircuit> {
        &mut s.circuits
    }
    fn parse(text: &str, path: &Path) -> anyhow::Result<QuantumCircuit> {
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        Ok(parse_qasm(text)?.with_name(name))
    }
    fn dump(item: &QuantumCircuit) -> anyhow::Result<String> {
        Ok(write_qasm(item))
    }
    fn unitary(item: &QuantumCircuit) -> anyhow::Result<Unitary> {
        Ok(unitary_of_circuit(item)?)
    }
}

impl Kind for Zx {
    type Item = ZXDiagram;
    const CMD: &'static str = "zx";
    const NOUN: &'static str = "ZX-diagram";
    fn mgr(s: &mut Session) -> &mut Manager<ZXDiagram> {
        &mut s.zx
    }
    fn parse(text: &str, _: &Path) -> anyhow::Result<ZXDiagram> {
        Ok(read_zx(text)?)
    }
    fn dump(item: &ZXDiagram) -> anyhow::Result<String> {
        Ok(write_zx(item))
    }
    fn unitary(item: &ZXDiagram) -> anyhow::Result<Unitary> {
        Ok(unitary_of_zx(item)?)
    }
}

impl Kind for Tabl {
    type Item = Tableau;
    const CMD: &'static str = "tableau";
    const NOUN: &'static str = "tableau";
    fn mgr(s: &mut Session) -> &mut Manager<Tableau> {
        &mut s.tableaux
    }
    fn parse(text: &str, _: &Path) -> anyhow::Result<Tableau> {
        Ok(text.parse()?)
    }
    fn dump(item: &Tableau) -> anyhow::Result<String> {
        Ok(item.to_string())
    }
    fn unitary(item: &Tableau) -> anyhow::Result<Unitary> {
        Ok(unitary_of_circuit(&item.to_circuit())?)
    }
}

impl Kind for Dev {
    type Item = Device;
    const CMD: &'static str = "device";
    const NOUN: &'static str = "device";
    fn mgr(s: &mut Session) -> &mut Manager<Device> {
        &mut s.devices
    }
    fn parse(text: &str, _: &Path) -> anyhow::Result<Device> {
        Ok(Device::parse(text)?)
    }
    fn dump(item: &Device) -> anyhow::Result<String> {
        Ok(item.to_text())
    }
    fn unitary(_: &Device) -> anyhow::Result<Unitary> {
        bail!("a device has no unitary")
    }
}

impl Kind for Tensor {
    type Item = Unitary;
    const CMD: &'static str = "tensor";
    const NOUN: &'static str = "tensor";
    fn mgr(s: &mut Session) -> &mut Manager<Unitary> {
        &mut s.tensors
    }
    fn unitary(item: &Unitary) -> anyhow::Result<Unitary> {
        Ok(item.clone())
    }
}

fn list<K: Kind>(sh: &mut Shell, _: &ParsedArgs) -> anyhow::Result<()> {
    let text = K::mgr(&mut sh.session).listing();
    sh.session.print(&text);
    Ok(())
}

fn checkout<K: Kind>(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    K::mgr(&mut sh.session).checkout(id_of(args, "id")?)?;
    Ok(())
}

fn delete<K: Kind>(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    K::mgr(&mut sh.session).delete(id_of(args, "id")?)?;
    Ok(())
}

fn read<K: Kind>(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let path = Path::new(args.str("filepath").expect("required"));
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read `{}`", path.display()))?;
    let item = K::parse(&text, path).with_context(|| format!("in `{}`", path.display()))?;
    let mgr = K::mgr(&mut sh.session);
    if args.flag("replace") {
        mgr.replace_focused(item);
    } else {
        mgr.add(item);
    }
    Ok(())
}

fn write<K: Kind>(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let text = K::dump(K::mgr(&mut sh.session).focused()?)?;
    match args.str("filepath") {
        None | Some("-") => sh.session.print(&text),
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write `{path}`"))?,
    }
    Ok(())
}

/// Picks the pair to compare: explicit ids, one id against the focus, or
/// the first entry against the focus.
fn equiv<K: Kind>(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let mgr = K::mgr(&mut sh.session);
    let focus = mgr.focus_id().ok_or_else(|| anyhow!("no {} in the workspace", K::NOUN))?;
    let ids: Vec<usize> = args
        .ints("ids")
        .into_iter()
        .map(|i| usize::try_from(i).map_err(|_| anyhow!("ids are non-negative, got {i}")))
        .collect::<Result<_, _>>()?;
    let (a, b) = match ids.as_slice() {
        [] => (mgr.ids()[0], focus),
        [a] => (*a, focus),
        [a, b] => (*a, *b),
        _ => bail!("at most two ids"),
    };
    let ua = K::unitary(mgr.get(a)?)?;
    let ub = K::unitary(mgr.get(b)?)?;
    let r = equiv_up_to_global_phase(&ua, &ub)?;
    let verdict = if r.equivalent { "Equivalent up to global phase" } else { "Not equivalent" };
    sh.session.println(&format!("{verdict} ({} {a} vs {b}, fidelity {:.9})", K::CMD, r.fidelity));
    Ok(())
}

fn new_circuit(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let n = id_of(args, "n_qubits")?;
    sh.session.circuits.add(QuantumCircuit::new(n));
    Ok(())
}

fn new_zx(sh: &mut Shell, _: &ParsedArgs) -> anyhow::Result<()> {
    sh.session.zx.add(ZXDiagram::new());
    Ok(())
}

fn new_tableau(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let n = id_of(args, "n_qubits")?;
    sh.session.tableaux.add(Tableau::new(n));
    Ok(())
}

fn print_circuit(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let c = sh.session.circuits.focused()?;
    let mut s = String::new();
    if args.flag("qasm") {
        s = write_qasm(c);
    } else {
        writeln!(s, "{}", c.summary()).unwrap();
        if args.flag("stat") {
            writeln!(s, "{}", c.statistics()).unwrap();
        }
        if args.flag("gates") {
            for (i, g) in c.gates.iter().enumerate() {
                writeln!(s, "{i:>4}  {g}").unwrap();
            }
        }
    }
    sh.session.print(&s);
    Ok(())
}

fn print_zx(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let d = sh.session.zx.focused()?;
    let s = if args.flag("full") {
        write_zx(d)
    } else {
        format!("{}\nT-count    : {}\nSpiders    : {}\n", d.summary(), d.t_count(), d.spider_count())
    };
    sh.session.print(&s);
    Ok(())
}

fn print_tableau(sh: &mut Shell, _: &ParsedArgs) -> anyhow::Result<()> {
    let s = sh.session.tableaux.focused()?.to_string();
    sh.session.print(&s);
    Ok(())
}

fn print_device(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let d = sh.session.devices.focused()?;
    let mut s = d.to_text();
    if args.flag("distances") {
        for row in d.distances() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(s, "{}", cells.join(" ")).unwrap();
        }
    }
    sh.session.print(&s);
    Ok(())
}

fn print_tensor(sh: &mut Shell, _: &ParsedArgs) -> anyhow::Result<()> {
    let u = sh.session.tensors.focused()?;
    let mut s = String::new();
    for r in 0..u.dim() {
        let cells: Vec<String> = (0..u.dim())
            .map(|c| {
                let z = u.get(r, c);
                format!("{:+.4}{:+.4}i", z.re, z.im)
            })
            .collect();
        writeln!(s, "{}", cells.join(" ")).unwrap();
    }
    sh.session.print(&s);
    Ok(())
}

fn filepath(help: &str) -> ArgumentSpec {
    ArgumentSpec::positional("filepath", ValueKind::String).help(help)
}

/// list, checkout, delete, equiv and, when supported, read and write.
fn manager_verbs<K: Kind + 'static>(cmd: Command, io: bool, read_desc: &str, read_help: &str) -> Command {
    let noun = K::NOUN;
    let mut cmd = cmd
        .subcommand(Command::new("list", &format!("list all {noun}s")).action(list::<K>))
        .subcommand(
            Command::new("checkout", &format!("switch focus to another {noun}"))
                .arg(id_arg(&format!("the id of the {noun} to focus")))
                .action(checkout::<K>),
        )
        .subcommand(
            Command::new("delete", &format!("delete a {noun}"))
                .arg(id_arg(&format!("the id of the {noun} to delete")))
                .action(delete::<K>),
        );
    if io {
        cmd = cmd
            .subcommand(
                Command::new("read", read_desc)
                    .arg(filepath(read_help))
                    .arg(ArgumentSpec::flag("-r", "--replace").help(&format!(
                        "if specified, replace the current {}; otherwise store a new one",
                        noun.rsplit(' ').next().unwrap()
                    )))
                    .action(read::<K>),
            )
            .subcommand(
                Command::new("write", &format!("write the focused {noun} to a file"))
                    .arg(filepath("the output path; `-` prints to the terminal").default(Value::Str("-".into())))
                    .action(write::<K>),
            );
    }
    if K::CMD != "device" {
        cmd = cmd.subcommand(
            Command::new("equiv", &format!("verify equivalence of two {noun}s"))
                .arg(ArgumentSpec::flag("-t", "--tensor").help("compare by dense tensor contraction"))
                .arg(
                    ArgumentSpec::positional("ids", ValueKind::Integer)
                        .many()
                        .help("up to two ids; the first entry and the focused one by default"),
                )
                .action(equiv::<K>),
        );
    }
    cmd
}

fn n_qubits_arg() -> ArgumentSpec {
    ArgumentSpec::positional("n_qubits", ValueKind::Integer)
        .default(Value::Int(0))
        .help("number of qubits")
}

pub(super) fn qcir() -> Command {
    let cmd = Command::new("qcir", "quantum circuit commands")
        .subcommand(Command::new("new", "add an empty quantum circuit").arg(n_qubits_arg()).action(new_circuit))
        .subcommand(
            Command::new("print", "print quantum circuit information")
                .arg(ArgumentSpec::flag("-s", "--stat").help("print gate statistics"))
                .arg(ArgumentSpec::flag("-g", "--gates").help("list the gates"))
                .arg(ArgumentSpec::flag("-q", "--qasm").help("print as OpenQASM"))
                .action(print_circuit),
        );
    let cmd = manager_verbs::<Qcir>(
        cmd,
        true,
        "read a quantum circuit and construct the corresponding netlist",
        "the filepath to the quantum circuit file. Supported extension: .qasm",
    );
    super::synth::circuit_passes(cmd)
}

pub(super) fn zx() -> Command {
    let cmd = Command::new("zx", "ZX-diagram commands")
        .subcommand(Command::new("new", "add an empty ZX-diagram").action(new_zx))
        .subcommand(
            Command::new("print", "print ZX-diagram information")
                .arg(ArgumentSpec::flag("-f", "--full").help("print every vertex and edge"))
                .action(print_zx),
        );
    let cmd = manager_verbs::<Zx>(
        cmd,
        true,
        "read a ZX-diagram",
        "the filepath to the ZX-diagram file in zx-v1 format",
    );
    super::synth::zx_passes(cmd)
}

pub(super) fn tableau() -> Command {
    let cmd = Command::new("tableau", "tableau commands")
        .subcommand(Command::new("new", "add an empty tableau").arg(n_qubits_arg()).action(new_tableau))
        .subcommand(Command::new("print", "print the focused tableau").action(print_tableau));
    let cmd = manager_verbs::<Tabl>(cmd, true, "read a tableau", "the filepath to the tableau file");
    super::synth::tableau_passes(cmd)
}

pub(super) fn device() -> Command {
    let cmd = Command::new("device", "device topology commands").subcommand(
        Command::new("print", "print the focused device")
            .arg(ArgumentSpec::flag("-d", "--distances").help("also print the distance matrix"))
            .action(print_device),
    );
    manager_verbs::<Dev>(
        cmd,
        true,
        "read info about a quantum device",
        "the filepath to the device file in device-v1 format",
    )
}

pub(super) fn tensor() -> Command {
    let cmd = Command::new("tensor", "dense unitary commands")
        .subcommand(Command::new("print", "print the focused unitary").action(print_tensor));
    manager_verbs::<Tensor>(cmd, false, "", "")
}

const KINDS: [&str; 7] = ["qcir", "qc", "zx", "tableau", "tabl", "tensor", "ts"];

fn canonical(kind: &str) -> &str {
    match kind {
        "qc" => "qcir",
        "tabl" => "tableau",
        "ts" => "tensor",
        k => k,
    }
}

fn run_convert(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let from = canonical(args.str("from").expect("required"));
    let to = canonical(args.str("to").expect("required"));
    let s = &mut sh.session;
    match (from, to) {
        ("qcir", "zx") => {
            let d = ZXDiagram::from_circuit(s.circuits.focused()?)?;
            s.zx.add(d);
        }
        ("qcir", "tableau") => {
            let t = Tableau::from_circuit(&s.circuits.focused()?.decompose_multi_controlled())?;
            s.tableaux.add(t);
        }
        ("qcir", "tensor") => {
            let u = unitary_of_circuit(s.circuits.focused()?)?;
            s.tensors.add(u);
        }
        ("zx", "qcir") => {
            let c = extract_circuit(s.zx.focused()?)?;
            s.circuits.add(c);
        }
        ("zx", "tensor") => {
            let u = unitary_of_zx(s.zx.focused()?)?;
            s.tensors.add(u);
        }
        ("tableau", "qcir") => {
            let c = s.tableaux.focused()?.to_circuit();
            s.circuits.add(c);
        }
        _ => bail!("no conversion from {from} to {to}"),
    }
    Ok(())
}

pub(super) fn convert() -> Command {
    let kinds = ValueKind::Choice(KINDS.iter().map(|k| k.to_string()).collect());
    Command::new("convert", "convert the focused entry from one representation to another")
        .arg(ArgumentSpec::positional("from", kinds.clone()).help("source representation"))
        .arg(ArgumentSpec::positional("to", kinds).help("target representation"))
        .action(run_convert)
}
