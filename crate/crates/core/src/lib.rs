//! Strongly hollow elements of finite lattices.
//!
//! A finite bounded lattice stands in for the lattice of ideals of a ring:
//! join is ideal sum, meet is intersection. This crate finds the strongly
//! hollow elements, builds the SH- and W-topologies on the nonzero ones,
//! computes the Cantor–Bendixson filtration and the dual-classical Krull
//! dimension, and checks the relations between them over generated corpora.

pub mod dimensions;
pub mod export;
pub mod generators;
pub mod lattice;
pub mod set;
pub mod sh;
pub mod topology;
pub mod verify;

pub use dimensions::{analyze, Analysis, DimensionReport, YFiltration};
pub use generators::{GeneratorError, LatticeSpec};
pub use lattice::{FiniteLattice, LatticeDocument, RelationKind, ValidationError, Violation};
pub use set::ElementSet;
pub use sh::ShAnalysis;
pub use topology::{AxiomViolation, CbFiltration, FiniteTopology};
pub use verify::{run_suite, CheckContext, CorpusConfig, VerificationRun};
