//! Cayley graphs of the symmetric group generated by transpositions, with
//! exact connectivity, `g`-good-neighbor and cyclic-cut analysis at small
//! scale, and a suite of executable structural checks.
//!
//! The usual entry point is a [`GeneratingGraph`] (for example
//! [`GeneratingGraph::cycle`] for the modified bubble-sort graph), turned into
//! a [`CayleyGraph`] by [`build_cayley`]. The [`cuts`] module then answers
//! questions about fault sets, and [`lab`] runs the structural checks.

pub mod cayley;
pub mod cuts;
pub mod error;
pub mod export;
pub mod fixtures;
pub mod genset;
pub mod graph;
pub mod lab;
pub mod perm;
pub mod subsets;
pub mod topology;

pub use cayley::{build_cayley, CayleyGraph, CrossEdgeSet, MAX_CAYLEY_ARITY};
pub use cuts::{CutAnalysis, CutKind, CutWitness, FaultSet};
pub use error::{Error, Result};
pub use genset::{build_generating_graph, classify, GenClass, GeneratingGraph, PeelChoice};
pub use graph::{Graph, Vertex};
pub use perm::{Parity, PermRank, Permutation};
pub use topology::TopologySpec;
