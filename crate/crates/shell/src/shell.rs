// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};

use log::warn;
use thiserror::Error;

use crate::args::{parse_args, render_help, ArgError, ArgumentSpec, Parsed, ParsedArgs};
use crate::commands;
use crate::line::{split_commands, strip_comment, substitute, tokenize, LineError};
use crate::session::{OutputMode, Session};

pub const ALIAS_DEPTH_CAP: usize = 16;
pub const RC_ENV: &str = "QSYNTH_RC";

pub type Action = fn(&mut Shell, &ParsedArgs) -> anyhow::Result<()>;

pub struct Command {
    pub name: String,
    pub description: String,
    pub args: Vec<ArgumentSpec>,
    pub subcommands: Vec<Command>,
    pub action: Option<Action>,
}

impl Command {
    pub fn new(name: &str, description: &str) -> Self {
        Command {
            name: name.to_string(),
            description: description.to_string(),
            args: Vec::new(),
            subcommands: Vec::new(),
            action: None,
        }
    }

    pub fn arg(mut self, spec: ArgumentSpec) -> Self {
        self.args.push(spec);
        self
    }

    pub fn subcommand(mut self, cmd: Command) -> Self {
        self.subcommands.push(cmd);
        self
    }

    pub fn action(mut self, f: Action) -> Self {
        self.action = Some(f);
        self
    }

    pub fn help(&self, path: &str) -> String {
        let subs: Vec<(String, String)> =
            self.subcommands.iter().map(|c| (c.name.clone(), c.description.clone())).collect();
        render_help(path, &self.description, &self.args, &subs)
    }
}

#[derive(Debug, Error)]
pub enum ShellError {
    #[error(transparent)]
    Line(#[from] LineError),
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("ambiguous command `{given}`: could be {candidates}")]
    Ambiguous { given: String, candidates: String },
    #[error("`{path}` needs a subcommand: {choices}")]
    MissingSubcommand { path: String, choices: String },
    #[error("{path}: {source}")]
    Args { path: String, source: ArgError },
    #[error("alias `{0}` expands more than {ALIAS_DEPTH_CAP} levels deep")]
    AliasDepth(String),
    #[error("{path}: {source}")]
    Command { path: String, source: anyhow::Error },
    #[error("cannot read script `{path}`: {message}")]
    ScriptFile { path: String, message: String },
    #[error("script expects {} argument(s) ({}), got {got}", .expected.len(), .expected.join(", "))]
    ScriptArgs { expected: Vec<String>, got: usize },
    #[error("line {line}: {source}")]
    ScriptLine { line: usize, source: Box<ShellError> },
}

pub struct Shell {
    commands: Vec<Command>,
    pub session: Session,
}

impl Shell {
    pub fn new(mode: OutputMode) -> Shell {
        let mut session = Session::new(mode);
        for (name, text) in commands::BUILTIN_ALIASES {
            session.aliases.insert(name.to_string(), text.to_string());
        }
        Shell {
            commands: commands::builtin(),
            session,
        }
    }

    pub fn commands(&self) -> &[Command] {
        &self.commands
    }

    /// Runs one typed line and records it in the history.
    pub fn execute_line(&mut self, line: &str) -> Result<(), ShellError> {
        if !strip_comment(line).trim().is_empty() {
            self.session.history.push(line.trim().to_string());
        }
        self.run_line(line)
    }

    /// Runs one line without touching the history.
    pub fn run_line(&mut self, line: &str) -> Result<(), ShellError> {
        let text = substitute(strip_comment(line), &self.session.variables)?;
        for segment in split_commands(&text) {
            self.run_segment(&segment)?;
        }
        Ok(())
    }

    fn expand_aliases(&self, mut tokens: Vec<String>) -> Result<Vec<String>, ShellError> {
        let mut depth = 0;
        while let Some(text) = tokens.first().and_then(|t| self.session.aliases.get(t)) {
            depth += 1;
            if depth > ALIAS_DEPTH_CAP {
                return Err(ShellError::AliasDepth(tokens[0].clone()));
            }
            let mut expanded = tokenize(text)?;
            if expanded.first() == tokens.first() {
                // `alias ls "ls -l"` style: stop after one expansion
                expanded.extend(tokens.drain(1..));
                return Ok(expanded);
            }
            expanded.extend(tokens.drain(1..));
            tokens = expanded;
        }
        Ok(tokens)
    }

    fn run_segment(&mut self, segment: &str) -> Result<(), ShellError> {
        let tokens = self.expand_aliases(tokenize(segment)?)?;
        if tokens.is_empty() {
            return Ok(());
        }
        let (indices, consumed) = resolve(&self.commands, &tokens)?;
        let cmd = lookup(&self.commands, &indices);
        let path = path_of(&self.commands, &indices);
        let rest = &tokens[consumed..];
        if !cmd.subcommands.is_empty() && cmd.action.is_none() {
            if rest.iter().any(|t| t == "-h" || t == "--help") {
                let h = cmd.help(&path);
                self.session.print(&h);
                return Ok(());
            }
            return Err(ShellError::MissingSubcommand {
                choices: cmd.subcommands.iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join(", "),
                path,
            });
        }
        match parse_args(&cmd.args, rest) {
            Ok(Parsed::Help) => {
                let h = cmd.help(&path);
                self.session.print(&h);
                Ok(())
            }
            Ok(Parsed::Args(args)) => {
                let action = cmd.action.expect("leaf commands have actions");
                action(self, &args).map_err(|source| ShellError::Command { path, source })
            }
            Err(source) => Err(ShellError::Args { path, source }),
        }
    }

    /// Help for the command named by `words`, resolved like a command line.
    pub fn help_for(&self, words: &[String]) -> Result<String, ShellError> {
        let words = self.expand_aliases(words.to_vec())?;
        let (indices, _) = resolve(&self.commands, &words)?;
        Ok(lookup(&self.commands, &indices).help(&path_of(&self.commands, &indices)))
    }

    pub fn run_script(&mut self, path: &Path, args: &[String]) -> Result<(), ShellError> {
        let text = std::fs::read_to_string(path).map_err(|e| ShellError::ScriptFile {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        self.run_script_text(&text, args)
    }

    /// A leading `//!ARGS A B` banner names the required arguments, which
    /// are bound as variables before the lines run. Stops at the first error.
    pub fn run_script_text(&mut self, text: &str, args: &[String]) -> Result<(), ShellError> {
        let header = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        let expected: Vec<String> = match header.trim().strip_prefix("//!ARGS") {
            Some(names) => names.split_whitespace().map(String::from).collect(),
            None => Vec::new(),
        };
        if expected.len() != args.len() {
            return Err(ShellError::ScriptArgs {
                expected,
                got: args.len(),
            });
        }
        for (name, value) in expected.iter().zip(args) {
            self.session.variables.insert(name.clone(), value.clone());
        }
        for (i, line) in text.lines().enumerate() {
            self.run_line(line).map_err(|e| ShellError::ScriptLine {
                line: i + 1,
                source: Box::new(e),
            })?;
        }
        Ok(())
    }

    /// `$QSYNTH_RC`, else `~/.config/qsyn/qsynrc`.
    pub fn rc_path() -> Option<PathBuf> {
        if let Some(p) = std::env::var_os(RC_ENV) {
            return Some(PathBuf::from(p));
        }
        std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".config/qsyn/qsynrc"))
    }

    /// Runs the rc file if it exists; failing lines are reported and skipped.
    pub fn load_rc(&mut self) {
        let Some(path) = Shell::rc_path() else { return };
        let Ok(text) = std::fs::read_to_string(&path) else { return };
        for (i, line) in text.lines().enumerate() {
            if let Err(e) = self.run_line(line) {
                warn!("{}:{}: {e}", path.display(), i + 1);
            }
        }
    }
}

fn match_name<'a>(cmds: &'a [Command], given: &str) -> Result<usize, ShellError> {
    if let Some(i) = cmds.iter().position(|c| c.name == given) {
        return Ok(i);
    }
    let hits: Vec<usize> = (0..cmds.len()).filter(|&i| cmds[i].name.starts_with(given)).collect();
    match hits.as_slice() {
        [one] => Ok(*one),
        [] => Err(ShellError::UnknownCommand(given.to_string())),
        many => Err(ShellError::Ambiguous {
            given: given.to_string(),
            candidates: many.iter().map(|&i| cmds[i].name.as_str()).collect::<Vec<&'a str>>().join(", "),
        }),
    }
}

/// Walks the command tree, returning child indices and tokens consumed.
fn resolve(cmds: &[Command], tokens: &[String]) -> Result<(Vec<usize>, usize), ShellError> {
    let first = tokens.first().ok_or_else(|| ShellError::UnknownCommand(String::new()))?;
    let mut indices = vec![match_name(cmds, first)?];
    let mut level = &cmds[indices[0]];
    let mut consumed = 1;
    while !level.subcommands.is_empty() {
        match tokens.get(consumed) {
            Some(t) if !t.starts_with('-') => {
                let i = match_name(&level.subcommands, t).map_err(|e| match e {
                    ShellError::UnknownCommand(name) => {
                        ShellError::UnknownCommand(format!("{} {name}", path_of(cmds, &indices)))
                    }
                    other => other,
                })?;
                indices.push(i);
                level = &level.subcommands[i];
                consumed += 1;
            }
            _ => break,
        }
    }
    Ok((indices, consumed))
}

fn lookup<'a>(cmds: &'a [Command], indices: &[usize]) -> &'a Command {
    let mut cmd = &cmds[indices[0]];
    for &i in &indices[1..] {
        cmd = &cmd.subcommands[i];
    }
    cmd
}

fn path_of(cmds: &[Command], indices: &[usize]) -> String {
    let mut names = vec![cmds[indices[0]].name.as_str()];
    let mut cmd = &cmds[indices[0]];
    for &i in &indices[1..] {
        cmd = &cmd.subcommands[i];
        names.push(&cmd.name);
    }
    names.join(" ")
}
