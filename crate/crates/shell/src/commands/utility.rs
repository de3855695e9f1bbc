// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context};
use log::LevelFilter;

use crate::args::{ArgumentSpec, ParsedArgs, ValueKind};
use crate::shell::{Command, Shell};

const LEVELS: [&str; 6] = ["off", "error", "warn", "info", "debug", "trace"];

fn alias(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let s = &mut sh.session;
    match (args.str("name"), args.str("replacement"), args.flag("delete")) {
        (Some(name), None, true) => {
            s.aliases.shift_remove(name).ok_or_else(|| anyhow!("no alias named `{name}`"))?;
        }
        (Some(name), Some(text), false) => {
            s.aliases.insert(name.to_string(), text.to_string());
        }
        (None, None, false) => {
            let mut out = String::new();
            for (k, v) in &s.aliases {
                writeln!(out, "{k} = \"{v}\"").unwrap();
            }
            s.print(&out);
        }
        (Some(name), None, false) => {
            let text = s.aliases.get(name).ok_or_else(|| anyhow!("no alias named `{name}`"))?.clone();
            s.println(&format!("{name} = \"{text}\""));
        }
        _ => bail!("use `alias <name> <replacement>` or `alias -d <name>`"),
    }
    Ok(())
}

fn set(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let s = &mut sh.session;
    match (args.str("name"), args.str("value"), args.flag("delete")) {
        (Some(name), None, true) => {
            s.variables.shift_remove(name).ok_or_else(|| anyhow!("no variable named `{name}`"))?;
        }
        (Some(name), Some(value), false) => {
            s.variables.insert(name.to_string(), value.to_string());
        }
        (None, None, false) => {
            let mut out = String::new();
            for (k, v) in &s.variables {
                writeln!(out, "{k} = \"{v}\"").unwrap();
            }
            s.print(&out);
        }
        (Some(name), None, false) => {
            let value = s.variables.get(name).ok_or_else(|| anyhow!("no variable named `{name}`"))?.clone();
            s.println(&format!("{name} = \"{value}\""));
        }
        _ => bail!("use `set <name> <value>` or `set -d <name>`"),
    }
    Ok(())
}

fn history(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let s = &mut sh.session;
    let n = match args.int("count") {
        Some(n) => usize::try_from(n).map_err(|_| anyhow!("count must be non-negative"))?,
        None => s.history.len(),
    };
    let lines = &s.history[s.history.len().saturating_sub(n)..];
    if let Some(path) = args.str("output") {
        let text: String = lines.iter().map(|l| format!("{l}\n")).collect();
        std::fs::write(path, text).with_context(|| format!("cannot write `{path}`"))?;
        return Ok(());
    }
    let mut out = String::new();
    let first = s.history.len() - lines.len();
    for (i, l) in lines.iter().enumerate() {
        writeln!(out, "{:>4}  {l}", first + i).unwrap();
    }
    s.print(&out);
    Ok(())
}

/// `VmHWM` from procfs, in KiB.
fn peak_memory_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn usage(sh: &mut Shell, _: &ParsedArgs) -> anyhow::Result<()> {
    let elapsed = sh.session.started.elapsed().as_secs_f64();
    let memory = match peak_memory_kib() {
        Some(k) => format!("{:.3} MiB", k as f64 / 1024.0),
        None => "n/a".to_string(),
    };
    sh.session.println(&format!("Period time used : {elapsed:.3} seconds\nPeak memory used : {memory}"));
    Ok(())
}

pub(crate) fn level_filter(name: &str) -> Option<LevelFilter> {
    match name {
        "off" => Some(LevelFilter::Off),
        "error" => Some(LevelFilter::Error),
        "warn" => Some(LevelFilter::Warn),
        "info" => Some(LevelFilter::Info),
        "debug" => Some(LevelFilter::Debug),
        "trace" => Some(LevelFilter::Trace),
        _ => None,
    }
}

fn logger(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    match args.str("level") {
        Some(name) => {
            let level = level_filter(name).expect("validated choice");
            sh.session.log_level = level;
            log::set_max_level(level);
        }
        None => {
            let text = format!("log level: {}", sh.session.log_level.as_str().to_lowercase());
            sh.session.println(&text);
        }
    }
    Ok(())
}

fn help(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let words = args.strs("command");
    let text = if words.is_empty() {
        let w = sh.commands().iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in sh.commands() {
            writeln!(out, "{:w$}    {}", c.name, c.description).unwrap();
        }
        out
    } else {
        sh.help_for(&words)?
    };
    sh.session.print(&text);
    Ok(())
}

fn echo(sh: &mut Shell, args: &ParsedArgs) -> anyhow::Result<()> {
    let text = args.strs("text").join(" ");
    sh.session.println(&text);
    Ok(())
}

fn quit(sh: &mut Shell, _: &ParsedArgs) -> anyhow::Result<()> {
    sh.session.quit = true;
    Ok(())
}

pub(super) fn commands() -> Vec<Command> {
    let name = |help: &str| ArgumentSpec::positional("name", ValueKind::String).optional().help(help);
    vec![
        Command::new("alias", "set, unset or list aliases")
            .arg(name("the alias"))
            .arg(
                ArgumentSpec::positional("replacement", ValueKind::String)
                    .optional()
                    .help("the text the alias expands to"),
            )
            .arg(ArgumentSpec::flag("-d", "--delete").help("remove the alias"))
            .action(alias),
        Command::new("set", "set, unset or list variables")
            .arg(name("the variable"))
            .arg(ArgumentSpec::positional("value", ValueKind::String).optional().help("its value"))
            .arg(ArgumentSpec::flag("-d", "--delete").help("remove the variable"))
            .action(set),
        Command::new("history", "show or export command history")
            .arg(
                ArgumentSpec::positional("count", ValueKind::Integer)
                    .optional()
                    .help("number of most recent lines"),
            )
            .arg(ArgumentSpec::option("-o", "--output", ValueKind::String).help("write the lines to this file"))
            .action(history),
        Command::new("usage", "show time and memory usage").action(usage),
        Command::new("logger", "show or set the log level")
            .arg(
                ArgumentSpec::positional("level", ValueKind::Choice(LEVELS.iter().map(|l| l.to_string()).collect()))
                    .optional()
                    .help("the new level"),
            )
            .action(logger),
        Command::new("help", "list commands or show help for one")
            .arg(ArgumentSpec::positional("command", ValueKind::String).many().help("command path"))
            .action(help),
        Command::new("echo", "print the arguments")
            .arg(ArgumentSpec::positional("text", ValueKind::String).many().help("words to print"))
            .action(echo),
        Command::new("quit", "leave the shell").action(quit),
    ]
}
