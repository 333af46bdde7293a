//! Universality checks, constructive compilation and verification tools for
//! parity quantum computing.
//!
//! Pauli strings are handled in the binary symplectic picture
//! ([`pauli`]); parity sets and their generating sets live in
//! [`generating_sets`]; [`closure`] is the brute-force reachability oracle;
//! [`compiler`] builds nested-commutator sequences and circuits;
//! [`encoding`] holds the parity encoder and in-place rotations;
//! [`simulator`] is a dense statevector oracle and [`mbqc`] builds and checks
//! measurement-based resource graphs.

mod bits;
pub mod circuit;
pub mod closure;
pub mod compiler;
pub mod encoding;
pub mod error;
pub mod generating_sets;
pub mod mbqc;
pub mod pauli;
pub mod simulator;

pub use circuit::{Circuit, Gate};
pub use closure::{closure, is_universal, theorem2_scan, witness_sequence, ClosureResult};
pub use compiler::{
    emit_circuit, prop1_compile, theorem1_compile, AdjointSequence, CompiledRotation,
};
pub use error::{Error, Result};
pub use generating_sets::{
    build_generating_set, minimal_parity, pairs_parity, theorem1_check, GeneratingSet, Generator,
    ParitySet,
};
pub use mbqc::{build_resource_graph, canonical_gflow, verify_gflow, GFlow, OpenGraph, Plane};
pub use pauli::{evaluate_sequence, Pauli, PauliString, PauliVector};
pub use simulator::StateVector;
