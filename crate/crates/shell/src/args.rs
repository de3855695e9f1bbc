// SPDX-License-Identifier: Apache-2.0

//! Declarative argument specs, parsing, and help rendering.

use std::fmt::Write as _;

use indexmap::IndexMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum ValueKind {
    String,
    Integer,
    Real,
    /// `store_true`; takes no value.
    Flag,
    Choice(Vec<String>),
}

impl ValueKind {
    fn type_word(&self) -> &'static str {
        match self {
            ValueKind::String | ValueKind::Choice(_) => "string",
            ValueKind::Integer => "int",
            ValueKind::Real => "real",
            ValueKind::Flag => "flag",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Str(String),
    Int(i64),
    Real(f64),
    Bool(bool),
    List(Vec<Value>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    One,
    Optional,
    Many,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArgumentSpec {
    /// Positional name, or the long flag without dashes.
    pub name: String,
    /// Empty for positionals.
    pub flags: Vec<String>,
    pub kind: ValueKind,
    pub default: Option<Value>,
    pub required: bool,
    pub arity: Arity,
    pub help: String,
}

impl ArgumentSpec {
    pub fn positional(name: &str, kind: ValueKind) -> Self {
        ArgumentSpec {
            name: name.to_string(),
            flags: Vec::new(),
            kind,
            default: None,
            required: true,
            arity: Arity::One,
            help: String::new(),
        }
    }

    /// A `store_true` flag, e.g. `flag("-r", "--replace")`.
    pub fn flag(short: &str, long: &str) -> Self {
        Self::option(short, long, ValueKind::Flag).default(Value::Bool(false))
    }

    /// Pass an empty `short` for long-only options.
    pub fn option(short: &str, long: &str, kind: ValueKind) -> Self {
        assert!(long.starts_with("--") && (short.is_empty() || short.starts_with('-')));
        let flags = [short, long].iter().filter(|f| !f.is_empty()).map(|f| f.to_string()).collect();
        ArgumentSpec {
            name: long.trim_start_matches('-').to_string(),
            flags,
            kind,
            default: None,
            required: false,
            arity: Arity::One,
            help: String::new(),
        }
    }

    pub fn help(mut self, help: &str) -> Self {
        self.help = help.to_string();
        self
    }

    pub fn default(mut self, v: Value) -> Self {
        self.default = Some(v);
        self.required = false;
        if self.is_positional() && self.arity == Arity::One {
            self.arity = Arity::Optional;
        }
        self
    }

    pub fn optional(mut self) -> Self {
        self.required = false;
        if self.is_positional() {
            self.arity = Arity::Optional;
        }
        self
    }

    pub fn many(mut self) -> Self {
        self.arity = Arity::Many;
        self.required = false;
        self
    }

    pub fn required(mut self) -> Self {
        self.required = true;
        self
    }

    pub fn is_positional(&self) -> bool {
        self.flags.is_empty()
    }

    fn display_names(&self) -> String {
        if self.is_positional() {
            self.name.clone()
        } else {
            self.flags.join(", ")
        }
    }

    fn help_text(&self) -> String {
        let mut s = self.help.clone();
        if let ValueKind::Choice(cs) = &self.kind {
            write!(s, " {{{}}}", cs.join(", ")).unwrap();
        }
        match &self.default {
            Some(Value::Bool(false)) | None => {}
            Some(v) => write!(s, " (default: {})", v.to_text()).unwrap(),
        }
        s.trim_start().to_string()
    }

    fn usage(&self) -> String {
        let value = format!("<{} {}>", self.kind.type_word(), self.name);
        if self.is_positional() {
            return match self.arity {
                Arity::One => value,
                Arity::Optional => format!("[{value}]"),
                Arity::Many => format!("[{value}]..."),
            };
        }
        let flag = &self.flags[0];
        let body = if self.kind == ValueKind::Flag { flag.clone() } else { format!("{flag} {value}") };
        if self.required {
            body
        } else {
            format!("[{body}]")
        }
    }

    fn parse_value(&self, token: &str) -> Result<Value, ArgError> {
        let mismatch = |expected: &str| ArgError::Type {
            name: self.name.clone(),
            value: token.to_string(),
            expected: expected.to_string(),
        };
        match &self.kind {
            ValueKind::String => Ok(Value::Str(token.to_string())),
            ValueKind::Integer => token.parse().map(Value::Int).map_err(|_| mismatch("an integer")),
            ValueKind::Real => token.parse().map(Value::Real).map_err(|_| mismatch("a real number")),
            ValueKind::Flag => Ok(Value::Bool(true)),
            ValueKind::Choice(cs) => {
                if cs.iter().any(|c| c == token) {
                    return Ok(Value::Str(token.to_string()));
                }
                let hits: Vec<&String> = cs.iter().filter(|c| c.starts_with(token)).collect();
                match hits.as_slice() {
                    [one] => Ok(Value::Str((*one).clone())),
                    _ => Err(ArgError::InvalidChoice {
                        name: self.name.clone(),
                        value: token.to_string(),
                        choices: cs.join(", "),
                    }),
                }
            }
        }
    }
}

impl Value {
    pub fn to_text(&self) -> String {
        match self {
            Value::Str(s) => s.clone(),
            Value::Int(i) => i.to_string(),
            Value::Real(r) => r.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::List(vs) => vs.iter().map(Value::to_text).collect::<Vec<_>>().join(" "),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArgError {
    #[error("unrecognized option `{0}`")]
    UnknownOption(String),
    #[error("ambiguous option `{given}`: could be {candidates}")]
    AmbiguousOption { given: String, candidates: String },
    #[error("option `{0}` requires a value")]
    MissingValue(String),
    #[error("missing required argument `{0}`")]
    Missing(String),
    #[error("invalid choice `{value}` for `{name}` (choose from {choices})")]
    InvalidChoice { name: String, value: String, choices: String },
    #[error("argument `{name}` expects {expected}, got `{value}`")]
    Type { name: String, value: String, expected: String },
    #[error("unexpected argument `{0}`")]
    Extra(String),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParsedArgs {
    values: IndexMap<String, Value>,
}

impl ParsedArgs {
    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.get(name)
    }

    pub fn str(&self, name: &str) -> Option<&str> {
        match self.values.get(name) {
            Some(Value::Str(s)) => Some(s),
            _ => None,
        }
    }

    pub fn int(&self, name: &str) -> Option<i64> {
        match self.values.get(name) {
            Some(Value::Int(i)) => Some(*i),
            _ => None,
        }
    }

    pub fn flag(&self, name: &str) -> bool {
        matches!(self.values.get(name), Some(Value::Bool(true)))
    }

    pub fn list(&self, name: &str) -> &[Value] {
        match self.values.get(name) {
            Some(Value::List(vs)) => vs,
            _ => &[],
        }
    }

    pub fn strs(&self, name: &str) -> Vec<String> {
        self.list(name).iter().map(Value::to_text).collect()
    }

    pub fn ints(&self, name: &str) -> Vec<i64> {
        self.list(name)
            .iter()
            .filter_map(|v| match v {
                Value::Int(i) => Some(*i),
                _ => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Args(ParsedArgs),
    Help,
}

fn help_spec() -> ArgumentSpec {
    ArgumentSpec::flag("-h", "--help").help("show this help message")
}

/// Negative numbers and quoted text with spaces are values, not flags.
fn looks_like_flag(token: &str) -> bool {
    token.starts_with('-') && token.len() > 1 && !token.contains(' ') && token.parse::<f64>().is_err()
}

/// Parses `tokens` against `specs`. `-h`/`--help` anywhere wins.
pub fn parse_args(specs: &[ArgumentSpec], tokens: &[String]) -> Result<Parsed, ArgError> {
    if tokens.iter().any(|t| t == "-h" || t == "--help") {
        return Ok(Parsed::Help);
    }
    let mut values: IndexMap<String, Value> = IndexMap::new();
    let positionals: Vec<&ArgumentSpec> = specs.iter().filter(|s| s.is_positional()).collect();
    let mut next_pos = 0;
    let mut i = 0;
    while i < tokens.len() {
        let tok = &tokens[i];
        i += 1;
        if looks_like_flag(tok) {
            let (flag, inline) = match tok.split_once('=') {
                Some((f, v)) if f.starts_with("--") => (f, Some(v.to_string())),
                _ => (tok.as_str(), None),
            };
            let spec = find_option(specs, flag)?;
            let value = if spec.kind == ValueKind::Flag {
                Value::Bool(true)
            } else {
                let raw = match inline {
                    Some(v) => v,
                    None if i < tokens.len() => {
                        i += 1;
                        tokens[i - 1].clone()
                    }
                    None => return Err(ArgError::MissingValue(flag.to_string())),
                };
                spec.parse_value(&raw)?
            };
            values.insert(spec.name.clone(), value);
            continue;
        }
        let Some(spec) = positionals.get(next_pos) else {
            return Err(ArgError::Extra(tok.clone()));
        };
        let v = spec.parse_value(tok)?;
        if spec.arity == Arity::Many {
            match values.entry(spec.name.clone()).or_insert_with(|| Value::List(Vec::new())) {
                Value::List(vs) => vs.push(v),
                _ => unreachable!(),
            }
        } else {
            values.insert(spec.name.clone(), v);
            next_pos += 1;
        }
    }
    for spec in specs {
        if values.contains_key(&spec.name) {
            continue;
        }
        if spec.required {
            return Err(ArgError::Missing(spec.name.clone()));
        }
        match (&spec.default, spec.arity) {
            (Some(d), _) => {
                values.insert(spec.name.clone(), d.clone());
            }
            (None, Arity::Many) => {
                values.insert(spec.name.clone(), Value::List(Vec::new()));
            }
            (None, _) if spec.kind == ValueKind::Flag => {
                values.insert(spec.name.clone(), Value::Bool(false));
            }
            _ => {}
        }
    }
    Ok(Parsed::Args(ParsedArgs { values }))
}

/// Exact flag match, else unambiguous prefix of a long flag.
fn find_option<'a>(specs: &'a [ArgumentSpec], flag: &str) -> Result<&'a ArgumentSpec, ArgError> {
    let options = specs.iter().filter(|s| !s.is_positional());
    if let Some(s) = options.clone().find(|s| s.flags.iter().any(|f| f == flag)) {
        return Ok(s);
    }
    if !flag.starts_with("--") {
        return Err(ArgError::UnknownOption(flag.to_string()));
    }
    let hits: Vec<&ArgumentSpec> = options
        .filter(|s| s.flags.iter().any(|f| f.starts_with("--") && f.starts_with(flag)))
        .collect();
    match hits.as_slice() {
        [one] => Ok(one),
        [] => Err(ArgError::UnknownOption(flag.to_string())),
        many => Err(ArgError::AmbiguousOption {
            given: flag.to_string(),
            candidates: many.iter().map(|s| format!("--{}", s.name)).collect::<Vec<_>>().join(", "),
        }),
    }
}

fn table(out: &mut String, rows: &[&ArgumentSpec]) {
    let type_w = rows.iter().map(|s| s.kind.type_word().len()).max().unwrap_or(0);
    let name_w = rows.iter().map(|s| s.display_names().len()).max().unwrap_or(0);
    for s in rows {
        let line = format!(
            "  {:type_w$}  {:name_w$}    {}",
            s.kind.type_word(),
            s.display_names(),
            s.help_text()
        );
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

/// Usage, Description, Positional Arguments and Options sections. `path`
/// is the full command path, e.g. `qcir read`.
pub fn render_help(path: &str, description: &str, specs: &[ArgumentSpec], subcommands: &[(String, String)]) -> String {
    let help = help_spec();
    let options: Vec<&ArgumentSpec> = std::iter::once(&help).chain(specs.iter().filter(|s| !s.is_positional())).collect();
    let positionals: Vec<&ArgumentSpec> = specs.iter().filter(|s| s.is_positional()).collect();
    let mut out = format!("Usage: {path}");
    for s in options.iter().chain(&positionals) {
        write!(out, " {}", s.usage()).unwrap();
    }
    if !subcommands.is_empty() {
        out.push_str(" <subcommand>");
    }
    write!(out, "\n\nDescription:\n  {description}\n").unwrap();
    if !positionals.is_empty() {
        out.push_str("\nPositional Arguments:\n");
        table(&mut out, &positionals);
    }
    out.push_str("\nOptions:\n");
    table(&mut out, &options);
    if !subcommands.is_empty() {
        out.push_str("\nSubcommands:\n");
        let w = subcommands.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
        for (name, desc) in subcommands {
            writeln!(out, "  {name:w$}    {desc}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    fn specs() -> Vec<ArgumentSpec> {
        vec![
            ArgumentSpec::positional("filepath", ValueKind::String).help("the file"),
            ArgumentSpec::flag("-r", "--replace").help("replace"),
            ArgumentSpec::option("-n", "--count", ValueKind::Integer).default(Value::Int(3)),
            ArgumentSpec::option("", "--mode", ValueKind::Choice(vec!["fast".into(), "full".into()])),
        ]
    }

    fn args(s: &str) -> ParsedArgs {
        match parse_args(&specs(), &toks(s)).unwrap() {
            Parsed::Args(a) => a,
            Parsed::Help => panic!("help"),
        }
    }

    #[test]
    fn parses_flags_options_and_positionals() {
        let a = args("foo.qasm -r --count 5");
        assert_eq!(a.str("filepath"), Some("foo.qasm"));
        assert!(a.flag("replace"));
        assert_eq!(a.int("count"), Some(5));
        let a = args("--rep x --count=-2 --mode fu");
        assert!(a.flag("replace"));
        assert_eq!(a.int("count"), Some(-2));
        assert_eq!(a.str("mode"), Some("full"));
        assert_eq!(args("x").int("count"), Some(3));
    }

    #[test]
    fn reports_offenders() {
        let e = |s: &str| parse_args(&specs(), &toks(s)).unwrap_err().to_string();
        assert_eq!(e(""), "missing required argument `filepath`");
        assert_eq!(e("x --bogus"), "unrecognized option `--bogus`");
        assert_eq!(e("x -n two"), "argument `count` expects an integer, got `two`");
        assert_eq!(e("x --mode f"), "invalid choice `f` for `mode` (choose from fast, full)");
        assert_eq!(e("x y"), "unexpected argument `y`");
        assert_eq!(e("x -n"), "option `-n` requires a value");
    }

    #[test]
    fn help_wins() {
        assert_eq!(parse_args(&specs(), &toks("--bogus -h")).unwrap(), Parsed::Help);
    }

    #[test]
    fn bare_command_lists_only_help() {
        let h = render_help("qcir optimize", "optimize", &[], &[]);
        assert_eq!(h, "Usage: qcir optimize [-h]\n\nDescription:\n  optimize\n\nOptions:\n  flag  -h, --help    show this help message\n");
    }
}
