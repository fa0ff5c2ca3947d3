//! Exact tools for graph-state based (codeword-stabilized) quantum codes.
//!
//! The crate is organised bottom-up:
//!
//! - [`pauli`]: n-qubit Pauli operators in binary-symplectic form with exact phase.
//! - [`graphstate`]: graphs, graph states, stabilizer elements `G_U`, exact
//!   overlaps `⟨G|P|G⟩`, error reduction to phase-flip patterns, and a dense
//!   state-vector oracle.
//! - [`cwscode`]: codes spanned by `Z_c|G⟩`, Knill–Laflamme verification,
//!   distance, error patterns and transition operators, including the
//!   nonadditive `((9,12,3))` code on the 9-cycle.
//! - [`operatoralg`]: sparse Pauli sums, the code projector and weight enumerators.
//! - [`search`]: clique search for codeword sets avoiding the reachable patterns.
//!
//! Coefficient-carrying types are generic over a [`Scalar`]; the aliases
//! below fix the exact (`Ratio<i64>`) and floating (`f64`) instantiations.

pub mod bits;
pub mod cwscode;
pub mod error;
pub mod graphstate;
pub mod operatoralg;
pub mod pauli;
pub mod scalar;
pub mod search;

pub use bits::{VertexSet, MAX_QUBITS};
pub use cwscode::{CwsCode, Distance, KlReport, Violation};
pub use error::{Error, Result};
pub use graphstate::{DenseState, Graph, Reduction};
pub use operatoralg::{EnumeratorMethod, EnumeratorResult, PauliSum};
pub use pauli::{enumerate_errors, PauliOperator, PhaseValue};
pub use scalar::Scalar;
pub use search::{SearchConfig, SearchResult, SearchStrategy};

/// Exact scalar: every coefficient in this crate is a dyadic rational.
pub type Exact = num_rational::Rational64;

pub type ExactPauliSum = PauliSum<Exact>;
pub type FloatPauliSum = PauliSum<f64>;
pub type ExactState = DenseState<Exact>;
pub type FloatState = DenseState<f64>;
