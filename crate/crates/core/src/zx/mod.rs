// SPDX-License-Identifier: Apache-2.0

//! ZX-calculus diagrams: translation from circuits, graph-like normal form,
//! full reduction and circuit extraction.

mod extract;
mod graph;
mod io;
pub mod rules;
mod simplify;

use thiserror::Error;

pub use extract::{extract_circuit, extract_circuit_with, ExtractOptions, GadgetRemoval};
pub use graph::{EdgeType, GraphLikeCertificate, VertexId, VertexKind, ZXDiagram, ZXVertex};
pub use io::{read_zx, write_zx};
pub use simplify::{full_reduce, full_reduce_with, ReduceOptions, ReduceReport, MAX_REDUCE_ROUNDS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZXError {
    #[error("gate `{0}` has no ZX translation")]
    Unconvertible(String),
    #[error("extraction stuck: {0}")]
    ExtractionStuck(String),
    #[error("diagram has {inputs} inputs but {outputs} outputs")]
    BoundaryMismatch { inputs: usize, outputs: usize },
    #[error("malformed zx dump: {0}")]
    Format(String),
}
