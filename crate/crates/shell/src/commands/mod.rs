// SPDX-License-Identifier: Apache-2.0

mod data;
mod synth;
mod utility;

use crate::args::{ArgumentSpec, ParsedArgs, ValueKind};
use crate::shell::Command;

/// Shorthands available in every session.
pub const BUILTIN_ALIASES: [(&str, &str); 8] = [
    ("qc", "qcir"),
    ("tabl", "tableau"),
    ("qc2zx", "convert qcir zx"),
    ("zx2qc", "convert zx qcir"),
    ("qc2tabl", "convert qcir tableau"),
    ("tabl2qc", "convert tableau qcir"),
    ("qc2ts", "convert qcir tensor"),
    ("zx2ts", "convert zx tensor"),
];

pub fn builtin() -> Vec<Command> {
    let mut cmds = vec![
        data::qcir(),
        data::zx(),
        data::tableau(),
        data::device(),
        data::tensor(),
        data::convert(),
    ];
    cmds.extend(synth::commands());
    cmds.extend(utility::commands());
    cmds.sort_by(|a, b| a.name.cmp(&b.name));
    cmds
}

fn id_arg(help: &str) -> ArgumentSpec {
    ArgumentSpec::positional("id", ValueKind::Integer).help(help)
}

fn id_of(args: &ParsedArgs, name: &str) -> anyhow::Result<usize> {
    let raw = args.int(name).ok_or_else(|| anyhow::anyhow!("missing `{name}`"))?;
    usize::try_from(raw).map_err(|_| anyhow::anyhow!("ids are non-negative, got {raw}"))
}
