// SPDX-License-Identifier: Apache-2.0

//! Line-based diagram dump.
//!
//! ```text
//! zx-v1
//! inputs 0 1
//! outputs 4 5
//! 0 B 0 0
//! 2 Z 1/4
//! 0 2 S
//! ```
//!
//! Vertex lines are `id kind phase [qubit]` with kind `Z`, `X` or `B` and the
//! phase in units of π. Edge lines are `u v type` with type `S` or `H`.
//! `#` starts a comment.

use std::fmt::Write as _;

use num_rational::Rational64;

use super::graph::{EdgeType, VertexKind, ZXDiagram, ZXVertex};
use super::ZXError;
use crate::circuit::Phase;

const HEADER: &str = "zx-v1";

fn phase_text(p: Phase) -> String {
    if p.denominator() == 1 {
        p.numerator().to_string()
    } else {
        format!("{}/{}", p.numerator(), p.denominator())
    }
}

pub fn write_zx(d: &ZXDiagram) -> String {
    let mut s = String::new();
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    writeln!(s, "{HEADER}").unwrap();
    writeln!(s, "inputs {}", join(d.inputs())).unwrap();
    writeln!(s, "outputs {}", join(d.outputs())).unwrap();
    for (id, v) in d.vertices() {
        let kind = match v.kind {
            VertexKind::Z => "Z",
            VertexKind::X => "X",
            VertexKind::Boundary => "B",
        };
        write!(s, "{id} {kind} {}", phase_text(v.phase)).unwrap();
        if let Some(q) = v.qubit {
            write!(s, " {q}").unwrap();
        }
        s.push('\n');
    }
    for (u, v, t) in d.edges() {
        let t = if t == EdgeType::Simple { "S" } else { "H" };
        writeln!(s, "{u} {v} {t}").unwrap();
    }
    s
}

fn parse_phase(tok: &str) -> Option<Phase> {
    let (n, d) = match tok.split_once('/') {
        Some((n, d)) => (n.parse::<i64>().ok()?, d.parse::<i64>().ok()?),
        None => (tok.parse::<i64>().ok()?, 1),
    };
    (d != 0).then(|| Phase::from_ratio(Rational64::new(n, d)))
}

pub fn read_zx(text: &str) -> Result<ZXDiagram, ZXError> {
    let err = |line: usize, msg: &str| ZXError::Format(format!("line {line}: {msg}"));
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((n, other)) => return Err(err(n, &format!("expected header `{HEADER}`, found `{other}`"))),
        None => return Err(ZXError::Format("empty input".into())),
    }
    let mut d = ZXDiagram::new();
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    let mut edges = Vec::new();
    for (n, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let ids = |rest: &[&str]| -> Result<Vec<usize>, ZXError> {
            rest.iter().map(|t| t.parse().map_err(|_| err(n, &format!("bad vertex id `{t}`")))).collect()
        };
        match toks[0] {
            "inputs" => inputs = ids(&toks[1..])?,
            "outputs" => outputs = ids(&toks[1..])?,
            _ => {
                if toks.len() < 3 || toks.len() > 4 {
                    return Err(err(n, "expected `id kind phase [qubit]` or `u v type`"));
                }
                let a: usize = toks[0].parse().map_err(|_| err(n, "bad vertex id"))?;
                match toks[1] {
                    "Z" | "X" | "B" => {
                        let kind = match toks[1] {
                            "Z" => VertexKind::Z,
                            "X" => VertexKind::X,
                            _ => VertexKind::Boundary,
                        };
                        let phase = parse_phase(toks[2]).ok_or_else(|| err(n, "bad phase"))?;
                        let qubit = match toks.get(3) {
                            Some(t) => Some(t.parse().map_err(|_| err(n, "bad qubit"))?),
                            None => None,
                        };
                        d.insert_vertex_with_id(a, ZXVertex { kind, phase, qubit })?;
                    }
                    b => {
                        let b: usize = b.parse().map_err(|_| err(n, "bad vertex kind or id"))?;
                        let t = match toks[2] {
                            "S" => EdgeType::Simple,
                            "H" => EdgeType::Hadamard,
                            _ => return Err(err(n, "edge type must be S or H")),
                        };
                        if toks.len() != 3 {
                            return Err(err(n, "trailing tokens after edge"));
                        }
                        edges.push((n, a, b, t));
                    }
                }
            }
        }
    }
    for (n, a, b, t) in edges {
        if !d.contains(a) || !d.contains(b) {
            return Err(err(n, "edge references an unknown vertex"));
        }
        if a == b || d.connected(a, b) {
            return Err(err(n, "self-loop or parallel edge"));
        }
        d.set_edge(a, b, t);
    }
    for &v in inputs.iter().chain(&outputs) {
        if !d.contains(v) || !d.is_boundary(v) {
            return Err(ZXError::Format(format!("boundary list names non-boundary vertex {v}")));
        }
    }
    for (id, v) in d.vertices() {
        if v.kind == VertexKind::Boundary && d.degree(id) != 1 {
            return Err(ZXError::Format(format!("boundary {id} must have degree 1")));
        }
    }
    d.set_inputs(inputs);
    d.set_outputs(outputs);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::random::{random_circuit, RandomCircuitConfig};

    #[test]
    fn roundtrip_preserves_structure() {
        let c = random_circuit(&RandomCircuitConfig::clifford_t(3, 20), 5);
        let d = ZXDiagram::from_circuit(&c).unwrap();
        let text = write_zx(&d);
        assert!(text.starts_with("zx-v1\n"));
        let back = read_zx(&text).unwrap();
        assert_eq!(write_zx(&back), text);
        assert_eq!(back.inputs(), d.inputs());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(read_zx("zx-v2\n").is_err());
        assert!(read_zx("zx-v1\n0 Z 1/4\n0 0 H\n").is_err());
        assert!(read_zx("zx-v1\n0 Q 0\n").is_err());
        assert!(read_zx("zx-v1\n0 B 0\ninputs 0\n").is_err());
    }

    #[test]
    fn phases_are_units_of_pi() {
        let d = read_zx("zx-v1\n3 Z 7/4\n").unwrap();
        assert_eq!(d.phase(3), Phase::new(7, 4));
    }
}
