// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::io::Write as _;
use std::time::Instant;

use indexmap::IndexMap;
use log::LevelFilter;
use qsynth::circuit::QuantumCircuit;
use qsynth::device::Device;
use qsynth::tableau::Tableau;
use qsynth::tensor::Unitary;
use qsynth::zx::ZXDiagram;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManagerError {
    #[error("{kind} {id} does not exist")]
    InvalidId { kind: &'static str, id: usize },
    #[error("no {0} in the workspace")]
    Empty(&'static str),
}

/// Something a manager can hold.
pub trait Managed {
    const KIND: &'static str;
    fn summary(&self) -> String;
}

impl Managed for QuantumCircuit {
    const KIND: &'static str = "circuit";
    fn summary(&self) -> String {
        let name = if self.name.is_empty() { String::new() } else { format!("{} ", self.name) };
        format!("{name}({} qubits, {} gates)", self.n_qubits, self.gates.len())
    }
}

impl Managed for ZXDiagram {
    const KIND: &'static str = "zx-diagram";
    fn summary(&self) -> String {
        format!(
            "({} inputs, {} vertices, {} edges)",
            self.inputs().len(),
            self.num_vertices(),
            self.num_edges()
        )
    }
}

impl Managed for Tableau {
    const KIND: &'static str = "tableau";
    fn summary(&self) -> String {
        format!("({} qubits, {} elements)", self.n_qubits(), self.elements().len())
    }
}

impl Managed for Device {
    const KIND: &'static str = "device";
    fn summary(&self) -> String {
        format!("{} ({} qubits, {} edges)", self.name(), self.n_physical(), self.edges().count())
    }
}

impl Managed for Unitary {
    const KIND: &'static str = "tensor";
    fn summary(&self) -> String {
        format!("({} qubits)", self.n_qubits())
    }
}

/// Snapshots of one representation. Ids are never reused; whenever the
/// manager is nonempty exactly one entry is focused.
#[derive(Debug, Clone)]
pub struct Manager<T> {
    entries: BTreeMap<usize, T>,
    next_id: usize,
    focus: Option<usize>,
}

impl<T> Default for Manager<T> {
    fn default() -> Self {
        Manager {
            entries: BTreeMap::new(),
            next_id: 0,
            focus: None,
        }
    }
}

impl<T: Managed> Manager<T> {
    pub fn add(&mut self, item: T) -> usize {
        let id = self.next_id;
        self.next_id += 1;
        self.entries.insert(id, item);
        self.focus = Some(id);
        id
    }

    /// Replaces the focused entry, or adds one if there is none.
    pub fn replace_focused(&mut self, item: T) -> usize {
        match self.focus {
            Some(id) => {
                self.entries.insert(id, item);
                id
            }
            None => self.add(item),
        }
    }

    pub fn checkout(&mut self, id: usize) -> Result<(), ManagerError> {
        self.get(id)?;
        self.focus = Some(id);
        Ok(())
    }

    /// Deleting the focused entry moves focus to the highest remaining id.
    pub fn delete(&mut self, id: usize) -> Result<T, ManagerError> {
        let item = self.entries.remove(&id).ok_or(ManagerError::InvalidId { kind: T::KIND, id })?;
        if self.focus == Some(id) {
            self.focus = self.entries.keys().next_back().copied();
        }
        Ok(item)
    }

    pub fn get(&self, id: usize) -> Result<&T, ManagerError> {
        self.entries.get(&id).ok_or(ManagerError::InvalidId { kind: T::KIND, id })
    }

    pub fn focus_id(&self) -> Option<usize> {
        self.focus
    }

    pub fn focused(&self) -> Result<&T, ManagerError> {
        self.focus.and_then(|id| self.entries.get(&id)).ok_or(ManagerError::Empty(T::KIND))
    }

    pub fn focused_mut(&mut self) -> Result<&mut T, ManagerError> {
        self.focus.and_then(|id| self.entries.get_mut(&id)).ok_or(ManagerError::Empty(T::KIND))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ids(&self) -> Vec<usize> {
        self.entries.keys().copied().collect()
    }

    /// One line per entry, `*` marking the focus.
    pub fn listing(&self) -> String {
        let mut s = String::new();
        for (id, item) in &self.entries {
            let mark = if self.focus == Some(*id) { '*' } else { ' ' };
            s.push_str(&format!("{mark} {id}  {}\n", item.summary()));
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Stdout,
    Capture,
}

#[derive(Debug)]
pub struct Session {
    pub circuits: Manager<QuantumCircuit>,
    pub zx: Manager<ZXDiagram>,
    pub tableaux: Manager<Tableau>,
    pub devices: Manager<Device>,
    pub tensors: Manager<Unitary>,
    pub aliases: IndexMap<String, String>,
    pub variables: IndexMap<String, String>,
    pub history: Vec<String>,
    pub log_level: LevelFilter,
    pub started: Instant,
    pub quit: bool,
    mode: OutputMode,
    captured: String,
}

impl Session {
    pub fn new(mode: OutputMode) -> Session {
        Session {
            circuits: Manager::default(),
            zx: Manager::default(),
            tableaux: Manager::default(),
            devices: Manager::default(),
            tensors: Manager::default(),
            aliases: IndexMap::new(),
            variables: IndexMap::new(),
            history: Vec::new(),
            log_level: LevelFilter::Warn,
            started: Instant::now(),
            quit: false,
            mode,
            captured: String::new(),
        }
    }

    pub fn print(&mut self, text: &str) {
        match self.mode {
            OutputMode::Stdout => {
                let mut out = std::io::stdout().lock();
                let _ = out.write_all(text.as_bytes());
                let _ = out.flush();
            }
            OutputMode::Capture => self.captured.push_str(text),
        }
    }

    pub fn println(&mut self, text: &str) {
        self.print(text);
        self.print("\n");
    }

    /// Captured output since the last call; empty in stdout mode.
    pub fn take_output(&mut self) -> String {
        std::mem::take(&mut self.captured)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circuits(k: usize) -> Manager<QuantumCircuit> {
        let mut m = Manager::default();
        for _ in 0..k {
            m.add(QuantumCircuit::new(1));
        }
        m
    }

    #[test]
    fn new_focuses_latest() {
        let mut m = circuits(2);
        assert_eq!(m.focus_id(), Some(1));
        assert_eq!(m.listing(), "  0  (1 qubits, 0 gates)\n* 1  (1 qubits, 0 gates)\n");
        m.checkout(0).unwrap();
        assert_eq!(m.focus_id(), Some(0));
        assert_eq!(m.checkout(7), Err(ManagerError::InvalidId { kind: "circuit", id: 7 }));
    }

    #[test]
    fn delete_refocuses_highest_and_never_reuses_ids() {
        let mut m = circuits(3);
        m.checkout(1).unwrap();
        m.delete(1).unwrap();
        assert_eq!(m.focus_id(), Some(2));
        m.delete(0).unwrap();
        assert_eq!(m.focus_id(), Some(2));
        assert_eq!(m.add(QuantumCircuit::new(2)), 3);
        m.delete(3).unwrap();
        m.delete(2).unwrap();
        assert_eq!(m.focus_id(), None);
        assert!(m.focused().is_err());
    }
}
