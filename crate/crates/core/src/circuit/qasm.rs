// SPDX-License-Identifier: Apache-2.0

//! OpenQASM 2.0 subset: one `qreg`, builtin gate statements, `u1` as `rz`.
//! `creg`, `measure`, `barrier` and `reset` lines are skipped with a warning.

use std::fmt::Write as _;

use num_rational::Rational64;
use num_traits::Zero;

use super::{CircuitError, Gate, GateRegistry, Phase, QuantumCircuit};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Real(f64),
    Str(String),
    Punct(char),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> CircuitError {
    CircuitError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, CircuitError> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let src = raw.find("//").map_or(raw, |i| &raw[..i]);
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line,
                    column,
                });
            } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
                let start = i;
                let mut real = false;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    real |= chars[i] == '.';
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    real = true;
                    i += 1;
                    if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                        i += 1;
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let s: String = chars[start..i].iter().collect();
                let tok = if real {
                    Tok::Real(s.parse().map_err(|_| syntax(line, column, format!("bad number `{s}`")))?)
                } else {
                    Tok::Int(s.parse().map_err(|_| syntax(line, column, format!("bad integer `{s}`")))?)
                };
                out.push(Spanned { tok, line, column });
            } else if c == '"' {
                let start = i + 1;
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(syntax(line, column, "unterminated string"));
                }
                out.push(Spanned {
                    tok: Tok::Str(chars[start..i].iter().collect()),
                    line,
                    column,
                });
                i += 1;
            } else if "+-*/()[],;{}".contains(c) {
                out.push(Spanned {
                    tok: Tok::Punct(c),
                    line,
                    column,
                });
                i += 1;
            } else {
                return Err(syntax(line, column, format!("unexpected character `{c}`")));
            }
        }
    }
    Ok(out)
}

/// Angle value during expression evaluation: exact `plain + pi·π`, or
/// radians once a decimal literal is involved.
#[derive(Debug, Clone, Copy)]
enum Val {
    Exact { plain: Rational64, pi: Rational64 },
    Float(f64),
}

impl Val {
    fn radians(self) -> f64 {
        match self {
            Val::Exact { plain, pi } => ratio_f64(plain) + ratio_f64(pi) * std::f64::consts::PI,
            Val::Float(f) => f,
        }
    }

    fn add(self, o: Val) -> Val {
        match (self, o) {
            (Val::Exact { plain: a, pi: b }, Val::Exact { plain: c, pi: d }) => Val::Exact { plain: a + c, pi: b + d },
            _ => Val::Float(self.radians() + o.radians()),
        }
    }

    fn neg(self) -> Val {
        match self {
            Val::Exact { plain, pi } => Val::Exact { plain: -plain, pi: -pi },
            Val::Float(f) => Val::Float(-f),
        }
    }

    fn mul(self, o: Val) -> Val {
        match (self, o) {
            (Val::Exact { plain: a, pi: b }, Val::Exact { plain: c, pi: d }) if b.is_zero() || d.is_zero() => Val::Exact {
                plain: a * c,
                pi: a * d + b * c,
            },
            _ => Val::Float(self.radians() * o.radians()),
        }
    }

    fn div(self, o: Val) -> Option<Val> {
        match (self, o) {
            (Val::Exact { plain, pi }, Val::Exact { plain: c, pi: d }) if d.is_zero() => {
                (!c.is_zero()).then(|| Val::Exact {
                    plain: plain / c,
                    pi: pi / c,
                })
            }
            _ => {
                let r = o.radians();
                (r != 0.0).then(|| Val::Float(self.radians() / r))
            }
        }
    }
}

fn ratio_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    last_line: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<&'a Spanned, CircuitError> {
        let t = self
            .toks
            .get(self.pos)
            .ok_or_else(|| syntax(self.last_line, 1, "unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect_punct(&mut self, c: char) -> Result<(), CircuitError> {
        let t = self.next()?;
        if t.tok == Tok::Punct(c) {
            Ok(())
        } else {
            Err(syntax(t.line, t.column, format!("expected `{c}`, found {}", describe(&t.tok))))
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.peek().is_some_and(|t| t.tok == Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_int(&mut self) -> Result<i64, CircuitError> {
        let t = self.next()?;
        match t.tok {
            Tok::Int(v) => Ok(v),
            ref other => Err(syntax(t.line, t.column, format!("expected integer, found {}", describe(other)))),
        }
    }

    fn skip_statement(&mut self) -> Result<(), CircuitError> {
        while self.next()?.tok != Tok::Punct(';') {}
        Ok(())
    }

    fn expr(&mut self) -> Result<Val, CircuitError> {
        let mut v = self.term()?;
        loop {
            if self.eat_punct('+') {
                v = v.add(self.term()?);
            } else if self.eat_punct('-') {
                v = v.add(self.term()?.neg());
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<Val, CircuitError> {
        let mut v = self.unary()?;
        loop {
            if self.eat_punct('*') {
                v = v.mul(self.unary()?);
            } else if self.peek().is_some_and(|t| t.tok == Tok::Punct('/')) {
                let t = self.next()?;
                v = v
                    .div(self.unary()?)
                    .ok_or_else(|| syntax(t.line, t.column, "division by zero"))?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<Val, CircuitError> {
        if self.eat_punct('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat_punct('+') {
            return self.unary();
        }
        let t = self.next()?;
        match &t.tok {
            Tok::Int(v) => Ok(Val::Exact {
                plain: Rational64::from_integer(*v),
                pi: Rational64::zero(),
            }),
            Tok::Real(f) => Ok(Val::Float(*f)),
            Tok::Ident(s) if s == "pi" => Ok(Val::Exact {
                plain: Rational64::zero(),
                pi: Rational64::from_integer(1),
            }),
            Tok::Punct('(') => {
                let v = self.expr()?;
                self.expect_punct(')')?;
                Ok(v)
            }
            other => Err(syntax(t.line, t.column, format!("expected expression, found {}", describe(other)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(v) => format!("`{v}`"),
        Tok::Real(v) => format!("`{v}`"),
        Tok::Str(s) => format!("\"{s}\""),
        Tok::Punct(c) => format!("`{c}`"),
    }
}

fn to_phase(v: Val, line: usize, column: usize) -> Result<Phase, CircuitError> {
    match v {
        Val::Exact { plain, pi } if plain.is_zero() => Ok(Phase::from_ratio(pi)),
        _ => Phase::from_radians(v.radians())
            .ok_or_else(|| syntax(line, column, "angle is not a rational multiple of pi")),
    }
}

/// Parses with the builtin gate set.
pub fn parse_qasm(text: &str) -> Result<QuantumCircuit, CircuitError> {
    parse_qasm_with(text, &GateRegistry::builtin())
}

pub fn parse_qasm_with(text: &str, registry: &GateRegistry) -> Result<QuantumCircuit, CircuitError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        last_line: text.lines().count().max(1),
    };
    let mut qreg: Option<(String, usize)> = None;
    let mut gates: Vec<Gate> = Vec::new();

    while let Some(head) = p.peek() {
        let (line, column) = (head.line, head.column);
        let word = match &head.tok {
            Tok::Ident(w) => w.clone(),
            other => return Err(syntax(line, column, format!("expected statement, found {}", describe(other)))),
        };
        p.pos += 1;
        match word.as_str() {
            "OPENQASM" => {
                let t = p.next()?;
                match t.tok {
                    Tok::Real(v) if (v - 2.0).abs() < 1e-9 => {}
                    Tok::Int(2) => {}
                    _ => return Err(syntax(t.line, t.column, "only OPENQASM 2.0 is supported")),
                }
                p.expect_punct(';')?;
            }
            "include" => {
                let t = p.next()?;
                if !matches!(t.tok, Tok::Str(_)) {
                    return Err(syntax(t.line, t.column, "expected file name string"));
                }
                p.expect_punct(';')?;
            }
            "qreg" => {
                if qreg.is_some() {
                    return Err(CircuitError::MultipleQregs { line });
                }
                let t = p.next()?;
                let Tok::Ident(name) = &t.tok else {
                    return Err(syntax(t.line, t.column, "expected register name"));
                };
                p.expect_punct('[')?;
                let n = p.expect_int()?;
                p.expect_punct(']')?;
                p.expect_punct(';')?;
                qreg = Some((name.clone(), n as usize));
            }
            "creg" | "measure" | "barrier" | "reset" => {
                log::warn!("line {line}: skipping `{word}` statement");
                p.skip_statement()?;
            }
            "gate" | "opaque" | "if" => {
                return Err(syntax(line, column, format!("`{word}` statements are not supported")));
            }
            name => {
                if !registry.contains(name) {
                    return Err(CircuitError::UnknownGate {
                        line,
                        name: name.to_string(),
                    });
                }
                let mut params = Vec::new();
                if p.eat_punct('(') {
                    loop {
                        let at = p.peek().map_or((line, column), |t| (t.line, t.column));
                        let v = p.expr()?;
                        params.push(to_phase(v, at.0, at.1)?);
                        if !p.eat_punct(',') {
                            break;
                        }
                    }
                    p.expect_punct(')')?;
                }
                let Some((reg, size)) = qreg.as_ref() else {
                    return Err(syntax(line, column, "gate before qreg declaration"));
                };
                // operands: `q[i]` or a bare `q` for broadcast
                let mut operands: Vec<Option<usize>> = Vec::new();
                loop {
                    let t = p.next()?;
                    match &t.tok {
                        Tok::Ident(r) if r == reg => {}
                        other => {
                            return Err(syntax(t.line, t.column, format!("expected qubit operand, found {}", describe(other))))
                        }
                    }
                    if p.eat_punct('[') {
                        let at = p.peek().map_or((t.line, t.column), |x| (x.line, x.column));
                        let idx = p.expect_int()?;
                        if idx < 0 || idx as usize >= *size {
                            return Err(syntax(at.0, at.1, format!("qubit index {idx} out of range for {reg}[{size}]")));
                        }
                        p.expect_punct(']')?;
                        operands.push(Some(idx as usize));
                    } else {
                        operands.push(None);
                    }
                    if !p.eat_punct(',') {
                        break;
                    }
                }
                p.expect_punct(';')?;

                let kind = registry.resolve(name, &params, operands.len()).ok_or_else(|| {
                    syntax(
                        line,
                        column,
                        format!("wrong parameter or operand count for `{name}`"),
                    )
                })?;
                if operands.iter().all(Option::is_some) {
                    let qs = operands.into_iter().map(Option::unwrap).collect();
                    gates.push(Gate::new(kind, qs).map_err(|e| syntax(line, column, e.to_string()))?);
                } else if operands.len() == 1 && kind.arity() == 1 {
                    for q in 0..*size {
                        gates.push(Gate::single(kind.clone(), q));
                    }
                } else {
                    return Err(syntax(line, column, "register broadcast is only supported for single-qubit gates"));
                }
            }
        }
    }
    let n = qreg.map_or(0, |(_, n)| n);
    Ok(QuantumCircuit {
        n_qubits: n,
        gates,
        name: String::new(),
    })
}

/// Emits OpenQASM 2.0; angles are written as exact multiples of `pi`.
pub fn write_qasm(c: &QuantumCircuit) -> String {
    let mut s = String::new();
    s.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(s, "qreg q[{}];", c.n_qubits);
    for g in &c.gates {
        s.push_str(g.kind.name());
        if let Some(p) = g.kind.param() {
            let _ = write!(s, "({})", p.to_qasm());
        }
        for (i, q) in g.qubits.iter().enumerate() {
            let _ = write!(s, "{}q[{}]", if i == 0 { " " } else { "," }, q);
        }
        s.push_str(";\n");
    }
    s
}
