//! Stabilizer and graph codes through graph-like ZX-diagram encoders.
//!
//! The crate builds encoder diagrams for graph codes and stabilizer codes,
//! simplifies them with local complementation and pivoting, composes them by
//! concatenation and leg contraction, and extracts check matrices, logical
//! Pauli operators and encoding circuits from the result. Every rewrite is
//! backed by a dense tensor-contraction oracle so the whole pipeline can be
//! verified end to end on small instances.
//!
//! Start with [`compose::catalog`] for ready-made codes, or see the
//! `examples/` directory for one runnable walkthrough per capability.

pub mod circuit;
pub mod cli;
pub mod code;
pub mod compose;
pub mod dense;
pub mod diagram;
pub mod encoder;
pub mod error;
pub mod gf2;
pub mod local_clifford;
pub mod pauli;
pub mod random;
pub mod rewrite;

pub use circuit::{CliffordCircuit, Gate};
pub use code::StabilizerCode;
pub use compose::{catalog, CatalogEntry};
pub use diagram::GraphLikeDiagram;
pub use encoder::{EncoderDiagram, GraphCode};
pub use error::{Error, Result};
pub use gf2::{BitVec, Gf2Matrix};
pub use local_clifford::LocalClifford;
pub use pauli::PauliOperator;
