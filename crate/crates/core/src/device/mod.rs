// SPDX-License-Identifier: Apache-2.0

//! Coupling graphs and SWAP-based routing.
//!
//! ```text
//! device-v1 line3 3
//! # comment
//! 0 1
//! 1 2
//! ```

mod router;

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

pub use router::{
    route, unmap, validate_mapping, InitialPlacement, MappingError, Objective, Placement, RouteError, RouteOptions,
    RoutingResult, Scheduler,
};

const HEADER: &str = "device-v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeviceError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("coupling graph is not connected")]
    Disconnected,
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop on qubit {0}")]
    SelfLoop(usize),
    #[error("qubit {qubit} out of range for a {n}-qubit device")]
    OutOfRange { qubit: usize, n: usize },
    #[error("device needs at least one qubit")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Device {
    name: String,
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    distances: Vec<Vec<usize>>,
}

impl Device {
    /// Edges are unordered; each pair may appear once.
    pub fn from_edges(name: &str, n: usize, edges: &[(usize, usize)]) -> Result<Device, DeviceError> {
        if n == 0 {
            return Err(DeviceError::Empty);
        }
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            for q in [u, v] {
                if q >= n {
                    return Err(DeviceError::OutOfRange { qubit: q, n });
                }
            }
            if u == v {
                return Err(DeviceError::SelfLoop(u));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(DeviceError::DuplicateEdge(u, v));
            }
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &set {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let distances: Vec<Vec<usize>> = (0..n).map(|s| bfs(&neighbors, s)).collect();
        if distances[0].contains(&usize::MAX) {
            return Err(DeviceError::Disconnected);
        }
        Ok(Device {
            name: name.to_string(),
            n,
            edges: set,
            neighbors,
            distances,
        })
    }

    pub fn parse(text: &str) -> Result<Device, DeviceError> {
        let syntax = |line: usize, message: String| DeviceError::Syntax { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| syntax(1, "empty device description".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != HEADER {
            return Err(syntax(ln, format!("expected `{HEADER} <name> <n_physical>`")));
        }
        let n: usize = toks[2]
            .parse()
            .map_err(|_| syntax(ln, format!("bad qubit count `{}`", toks[2])))?;
        let mut edges = Vec::new();
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let parse = |t: &str| t.parse::<usize>().map_err(|_| syntax(ln, format!("bad qubit index `{t}`")));
            match toks.as_slice() {
                [u, v] => edges.push((parse(u)?, parse(v)?)),
                _ => return Err(syntax(ln, "expected `u v`".into())),
            }
        }
        Device::from_edges(toks[1], n, &edges)
    }

    /// Inverse of [`Device::parse`], edges in sorted order.
    pub fn to_text(&self) -> String {
        let mut s = format!("{HEADER} {} {}\n", self.name, self.n);
        for (u, v) in &self.edges {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    pub fn line(n: usize) -> Device {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Device::from_edges(&format!("line{n}"), n, &edges).expect("a line is connected")
    }

    pub fn complete(n: usize) -> Device {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Device::from_edges(&format!("complete{n}"), n, &edges).expect("a complete graph is connected")
    }

    /// Qubit 0 in the middle.
    pub fn star(n: usize) -> Device {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Device::from_edges(&format!("star{n}"), n, &edges).expect("a star is connected")
    }

    /// `0-1-2` with `1-3-4` hanging off the middle.
    pub fn t_shape() -> Device {
        Device::from_edges("tshape5", 5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).expect("connected")
    }

    /// `rows` lines of `width` qubits joined by bridge qubits every fourth
    /// column, alternating between offsets 0 and 2. Numbering runs through
    /// each line and then the bridges below it.
    pub fn heavy_hex(rows: usize, width: usize) -> Device {
        assert!(width >= 3 || (rows == 1 && width >= 1), "heavy-hex lines need at least three qubits");
        let mut edges = Vec::new();
        let mut next = 0;
        let mut pending_bridges: Vec<(usize, usize)> = Vec::new();
        for r in 0..rows {
            let line: Vec<usize> = (next..next + width).collect();
            next += width;
            for w in line.windows(2) {
                edges.push((w[0], w[1]));
            }
            for &(b, col) in &pending_bridges {
                edges.push((b, line[col]));
            }
            pending_bridges.clear();
            if r + 1 < rows {
                let offset = if r % 2 == 0 { 0 } else { 2 };
                for col in (offset..width).step_by(4) {
                    edges.push((line[col], next));
                    pending_bridges.push((next, col));
                    next += 1;
                }
            }
        }
        Device::from_edges(&format!("heavyhex{rows}x{width}"), next, &edges).expect("heavy-hex is connected")
    }

    /// The first `n` qubits of a heavy-hex lattice; a path with bridge
    /// qubits hanging off it.
    pub fn heavy_hex_fragment(n: usize) -> Device {
        let full = Device::heavy_hex(n, 5);
        let edges: Vec<_> = full.edges.iter().copied().filter(|&(u, v)| u < n && v < n).collect();
        Device::from_edges(&format!("heavyhex{n}"), n, &edges).expect("prefix of the numbering is connected")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_physical(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.neighbors[q]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        self.distances[a][b]
    }

    pub fn distances(&self) -> &[Vec<usize>] {
        &self.distances
    }
}

fn bfs(neighbors: &[Vec<usize>], source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; neighbors.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in &neighbors[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Floyd–Warshall, independent of the BFS in the implementation.
    fn all_pairs(d: &Device) -> Vec<Vec<usize>> {
        let n = d.n_physical();
        let inf = usize::MAX / 4;
        let mut m = vec![vec![inf; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 0;
        }
        for (u, v) in d.edges() {
            m[u][v] = 1;
            m[v][u] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    m[i][j] = m[i][j].min(m[i][k] + m[k][j]);
                }
            }
        }
        m
    }

    #[test]
    fn line_and_triangle_distances() {
        let d = Device::parse("device-v1 line 3\n0 1\n1 2\n").unwrap();
        assert_eq!(d.distance(0, 2), 2);
        let t = Device::parse("device-v1 tri 3\n0 1\n1 2\n0 2\n").unwrap();
        assert!((0..3).all(|a| (0..3).all(|b| t.distance(a, b) == (a != b) as usize)));
    }

    #[test]
    fn star_leaves_are_two_apart() {
        let d = Device::star(5);
        assert_eq!(d.distances(), all_pairs(&d).as_slice());
        assert_eq!(d.distance(1, 4), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Device::parse("device-v1 x 3\n0 1\n"), Err(DeviceError::Disconnected)));
        assert!(matches!(Device::parse("device-v1 x 2\n0 1\n1 0\n"), Err(DeviceError::DuplicateEdge(1, 0))));
        assert!(matches!(Device::parse("device-v2 x 2\n0 1\n"), Err(DeviceError::Syntax { line: 1, .. })));
        assert!(matches!(Device::parse("device-v1 x 2\n0 one\n"), Err(DeviceError::Syntax { line: 2, .. })));
        assert!(matches!(Device::parse("device-v1 x 2\n0 5\n"), Err(DeviceError::OutOfRange { qubit: 5, .. })));
    }

    #[test]
    fn text_roundtrip_is_exact() {
        let text = "device-v1 tshape5 5\n0 1\n1 2\n1 3\n3 4\n";
        let d = Device::parse(text).unwrap();
        assert_eq!(d, Device::t_shape());
        assert_eq!(d.to_text(), text);
        let with_comments = "# T device\ndevice-v1 tshape5 5\n0 1 # first\n\n1 2\n3 1\n3 4\n";
        assert_eq!(Device::parse(with_comments).unwrap().to_text(), text);
    }

    #[test]
    fn heavy_hex_shape() {
        let d = Device::heavy_hex(3, 5);
        // bridges at columns 0 and 4, then at column 2
        assert_eq!(d.n_physical(), 18);
        assert!(d.edges().all(|(u, v)| d.neighbors(u).len() <= 3 && d.neighbors(v).len() <= 3));
        let f = Device::heavy_hex_fragment(6);
        assert_eq!(f.n_physical(), 6);
        assert_eq!(f.edges().count(), 5);
    }

    proptest! {
        #[test]
        fn distances_form_a_metric(rows in 1usize..4, width in 3usize..9) {
            let d = Device::heavy_hex(rows, width);
            let n = d.n_physical();
            let oracle = all_pairs(&d);
            prop_assert_eq!(d.distances(), oracle.as_slice());
            for a in 0..n {
                prop_assert_eq!(d.distance(a, a), 0);
                for b in 0..n {
                    prop_assert_eq!(d.distance(a, b), d.distance(b, a));
                    for c in 0..n {
                        prop_assert!(d.distance(a, c) <= d.distance(a, b) + d.distance(b, c));
                    }
                }
            }
        }
    }
}
