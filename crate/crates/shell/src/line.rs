// SPDX-License-Identifier: Apache-2.0

//! Text-level preprocessing of a command line.

use indexmap::IndexMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("unterminated quote")]
    Unterminated,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unterminated `${{` in variable reference")]
    UnterminatedVariable,
}

/// Walks `line`, calling `f(index, char, quoted)` for each character.
fn scan(line: &str, mut f: impl FnMut(usize, char, bool) -> bool) {
    let mut quote: Option<char> = None;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        let quoted = quote.is_some() || escaped;
        if !f(i, c, quoted) {
            return;
        }
        if escaped {
            escaped = false;
        } else if c == '\\' && quote != Some('\'') {
            escaped = true;
        } else if quote == Some(c) {
            quote = None;
        } else if quote.is_none() && (c == '"' || c == '\'') {
            quote = Some(c);
        }
    }
}

/// Drops everything from the first unquoted `//`.
pub fn strip_comment(line: &str) -> &str {
    let bytes = line.as_bytes();
    let mut end = line.len();
    scan(line, |i, c, quoted| {
        if !quoted && c == '/' && bytes.get(i + 1) == Some(&b'/') {
            end = i;
            return false;
        }
        true
    });
    &line[..end]
}

/// Replaces every `${NAME}` with its value.
pub fn substitute(line: &str, vars: &IndexMap<String, String>) -> Result<String, LineError> {
    let mut out = String::with_capacity(line.len());
    let mut rest = line;
    while let Some(start) = rest.find("${") {
        out.push_str(&rest[..start]);
        let after = &rest[start + 2..];
        let end = after.find('}').ok_or(LineError::UnterminatedVariable)?;
        let name = &after[..end];
        let value = vars.get(name).ok_or_else(|| LineError::UnknownVariable(name.to_string()))?;
        out.push_str(value);
        rest = &after[end + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

/// Splits on unquoted `;`, dropping empty pieces.
pub fn split_commands(line: &str) -> Vec<String> {
    let mut cuts = Vec::new();
    scan(line, |i, c, quoted| {
        if !quoted && c == ';' {
            cuts.push(i);
        }
        true
    });
    let mut out = Vec::new();
    let mut start = 0;
    for cut in cuts.into_iter().chain(std::iter::once(line.len())) {
        let piece = line[start..cut].trim();
        if !piece.is_empty() {
            out.push(piece.to_string());
        }
        start = cut + 1;
    }
    out
}

pub fn tokenize(segment: &str) -> Result<Vec<String>, LineError> {
    shlex::split(segment).ok_or(LineError::Unterminated)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_outside_quotes_only() {
        assert_eq!(strip_comment("qcir read a.qasm // note"), "qcir read a.qasm ");
        assert_eq!(strip_comment("echo \"a // b\" // c"), "echo \"a // b\" ");
        assert_eq!(strip_comment("// only"), "");
    }

    #[test]
    fn variables() {
        let vars = IndexMap::from([("F".to_string(), "bench.qasm".to_string())]);
        assert_eq!(substitute("qcir read ${F}", &vars).unwrap(), "qcir read bench.qasm");
        assert_eq!(substitute("x ${G}", &vars), Err(LineError::UnknownVariable("G".into())));
    }

    #[test]
    fn semicolons() {
        assert_eq!(split_commands("qc2zx; zx optimize --full; zx2qc"), ["qc2zx", "zx optimize --full", "zx2qc"]);
        assert_eq!(split_commands("echo \"a;b\"; ;x"), ["echo \"a;b\"", "x"]);
    }

    #[test]
    fn quoting() {
        assert_eq!(tokenize("alias qr \"qcir read\"").unwrap(), ["alias", "qr", "qcir read"]);
        assert_eq!(tokenize("echo \"open"), Err(LineError::Unterminated));
    }
}
