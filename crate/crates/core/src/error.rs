use thiserror::Error;

use crate::bits::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} qubits vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },

    #[error("qubit index {index} outside 1..={n}")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("unsupported qubit count {0} (supported: 1..=64)")]
    QubitCount(usize),

    #[error("malformed Pauli label {label:?}: {reason}")]
    Label { label: String, reason: String },

    #[error("error weight {d} outside 0..={n}")]
    WeightOutOfRange { d: usize, n: usize },

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("{n} qubits exceeds the limit of {max} for {what}")]
    TooLarge { what: &'static str, n: usize, max: usize },

    #[error("duplicate codeword {0}")]
    DuplicateCodeword(VertexSet),

    #[error("codeword index {index} out of range for a code of size {k}")]
    CodewordIndex { index: usize, k: usize },

    #[error("pattern classes are only defined for loop graphs")]
    NotLoopGraph,

    #[error("expected a single Pauli term with unit-modulus coefficient")]
    NotSinglePauli,

    #[error("invalid search configuration: {0}")]
    SearchConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
