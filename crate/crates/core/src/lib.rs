#![forbid(unsafe_code)]
//! Construction, decomposition, and verification of hypohamiltonian snarks.
//!
//! A *snark* is a cubic, cyclically 4-edge-connected graph of girth at least 5
//! that is not 3-edge-colorable. A graph is *hypohamiltonian* if it has no
//! hamiltonian cycle but deleting any single vertex leaves a hamiltonian graph.
//!
//! The crate provides:
//!
//! * an immutable graph type with a graph6 codec and isomorphism testing
//!   ([`graph`], [`graph6`], [`iso`]);
//! * generators for the named base snarks and the dot product construction
//!   ([`generators`]);
//! * an exact hamiltonicity engine: hamiltonian cycles and paths, spanning
//!   path pairs, hypohamiltonicity, and suitable edge pairs ([`hamilton`]);
//! * 3-edge-colorability, snark and bicriticality tests ([`coloring`]);
//! * cyclic edge-connectivity ([`connectivity`]);
//! * perfect matchings and the 3-matching cover defect mu3 ([`factors`]);
//! * dot product decomposition along cyclic 4-cuts ([`decompose`]);
//! * hamiltonian-path certificate files with symmetry closure ([`certs`]);
//! * hypohamiltonian snark construction by target order ([`orders`]).

pub mod certs;
pub mod coloring;
pub mod connectivity;
pub mod decompose;
pub mod factors;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod hamilton;
pub mod iso;
pub mod orders;

pub use graph::{CubicGraph, EdgeId, GraphError, Vertex};
